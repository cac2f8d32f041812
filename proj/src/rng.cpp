#include "rdmt/rng.hpp"

#include "rdmt/errors.hpp"

namespace rdmt {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      engine_(make_engine(seed, stream)),
      normal_(0.0, 1.0),
      uniform_(0.0, 1.0) {}

double RngStream::uniform() { return uniform_(engine_); }

double RngStream::normal() { return normal_(engine_); }

double RngStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw DomainError("RngStream::gamma: shape and scale must be positive");
  }
  std::gamma_distribution<double> dist(shape, scale);
  return dist(engine_);
}

}  // namespace rdmt
