#ifndef RDMT_RNG_HPP_
#define RDMT_RNG_HPP_

#include <cstdint>
#include <random>

namespace rdmt {

// A reproducible random stream.  The pair (seed, stream) fully determines
// the sequence of draws, so independent checks or worker threads can each
// own a stream derived from one suite seed.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Uniform on [0, 1).
  double uniform();
  double normal();
  // Gamma with the given shape and scale (mean shape * scale).
  double gamma(double shape, double scale);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

}  // namespace rdmt

#endif  // RDMT_RNG_HPP_
