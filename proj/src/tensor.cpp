#include "gte/tensor.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gte/error.hpp"

namespace gte {

namespace {

static_assert(std::endian::native == std::endian::little,
              "byte-swapping writer not implemented for big-endian hosts");

constexpr char kMagic[4] = {'G', 'T', 'E', '1'};
constexpr std::size_t kMaxElements = std::size_t{1} << 31;

void put_u32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void put_f64(std::string& out, double v) {
  char b[8];
  std::memcpy(b, &v, 8);
  out.append(b, 8);
}

std::uint32_t get_u32(const std::string& in, std::size_t off) {
  std::uint32_t v;
  std::memcpy(&v, in.data() + off, 4);
  return v;
}

double get_f64(const std::string& in, std::size_t off) {
  double v;
  std::memcpy(&v, in.data() + off, 8);
  return v;
}

}  // namespace

GteTensor::GteTensor(std::uint32_t grid_width, std::uint32_t grid_height,
                     std::uint32_t d_max, double lambda)
    : wg_(grid_width), hg_(grid_height), dmax_(d_max), lambda_(lambda) {
  if (lambda <= 0.0) throw ConfigError("lambda must be positive");
  if (d_max < 3) throw ConfigError("D_max must be at least 3");
  std::size_t n = static_cast<std::size_t>(wg_) * hg_ * channels();
  if (n > kMaxElements) throw ValidationError("tensor dimensions overflow");
  data_.assign(n, 0.0f);
}

std::string save_tensor(const GteTensor& t) {
  std::string out;
  out.reserve(24 + t.size() * 4);
  out.append(kMagic, 4);
  put_u32(out, t.grid_width());
  put_u32(out, t.grid_height());
  put_u32(out, t.d_max());
  put_f64(out, t.lambda());
  out.append(reinterpret_cast<const char*>(t.data().data()), t.size() * 4);
  return out;
}

GteTensor load_tensor(const std::string& bytes) {
  if (bytes.size() < 24) throw ParseError("tensor: truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ParseError("tensor: bad magic, expected GTE1");
  }
  std::uint32_t wg = get_u32(bytes, 4);
  std::uint32_t hg = get_u32(bytes, 8);
  std::uint32_t dmax = get_u32(bytes, 12);
  double lambda = get_f64(bytes, 16);
  if (lambda <= 0.0) throw ParseError("tensor: non-positive lambda");
  if (dmax < 3 || dmax > 64) throw ParseError("tensor: D_max out of range");
  std::size_t n = static_cast<std::size_t>(wg) * hg * (1 + 3 * std::size_t{dmax});
  if (n > kMaxElements) throw ParseError("tensor: dimension overflow");
  if (bytes.size() != 24 + n * 4) throw ParseError("tensor: truncated payload");
  GteTensor t(wg, hg, dmax, lambda);
  std::memcpy(t.data().data(), bytes.data() + 24, n * 4);
  return t;
}

GteTensor load_tensor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_tensor(ss.str());
}

void save_tensor_file(const GteTensor& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  std::string bytes = save_tensor(t);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace gte
