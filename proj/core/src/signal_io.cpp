#include "sfht/signal_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace sfht {

namespace {

std::uint64_t load_le64(const unsigned char* p) {
  std::uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = (w << 8) | p[i];
  return w;
}

void store_le64(std::uint64_t w, unsigned char* p) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(w >> (8 * i));
}

}  // namespace

DenseSignal read_signal_f64le(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open signal file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.empty() || bytes.size() % 8 != 0)
    throw std::runtime_error("signal file size must be a multiple of 8 bytes: " + path);
  const std::size_t count = bytes.size() / 8;
  if (!std::has_single_bit(count))
    throw std::runtime_error("signal length must be a power of two: " + path);
  DenseSignal x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = std::bit_cast<double>(load_le64(&bytes[8 * i]));
  return x;
}

void write_signal_f64le(const std::string& path, std::span<const double> x) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open signal file for writing: " + path);
  std::vector<unsigned char> bytes(8 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) store_le64(std::bit_cast<std::uint64_t>(x[i]), &bytes[8 * i]);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing signal file: " + path);
}

}  // namespace sfht
