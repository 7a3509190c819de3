#ifndef GTE_TENSOR_HPP
#define GTE_TENSOR_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gte {

// Dense W/lambda x H/lambda x (1 + 3*D_max) tensor of 32-bit floats.
// Per cell: channel 0 is vertexness; then D_max (edgeness, dx, dy)
// triples, one per angular sector. dx/dy are meters. Storage is
// row-major with y outer, x inner and channel fastest-varying.
class GteTensor {
 public:
  GteTensor() = default;
  GteTensor(std::uint32_t grid_width, std::uint32_t grid_height,
            std::uint32_t d_max, double lambda);

  std::uint32_t grid_width() const { return wg_; }
  std::uint32_t grid_height() const { return hg_; }
  std::uint32_t d_max() const { return dmax_; }
  double lambda() const { return lambda_; }
  std::uint32_t channels() const { return 1 + 3 * dmax_; }

  // Metric extent covered by the grid (cell centers 0..Wg-1 map to
  // coordinates 0..(Wg-1)*lambda).
  double width() const { return (wg_ > 0 ? wg_ - 1 : 0) * lambda_; }
  double height() const { return (hg_ > 0 ? hg_ - 1 : 0) * lambda_; }

  float at(std::uint32_t x, std::uint32_t y, std::uint32_t c) const {
    return data_[index(x, y, c)];
  }
  void set(std::uint32_t x, std::uint32_t y, std::uint32_t c, float v) {
    data_[index(x, y, c)] = v;
  }

  float vertexness(std::uint32_t x, std::uint32_t y) const { return at(x, y, 0); }
  // sector in 1..D_max
  float edgeness(std::uint32_t x, std::uint32_t y, std::uint32_t sector) const {
    return at(x, y, 3 * sector - 2);
  }
  float edge_dx(std::uint32_t x, std::uint32_t y, std::uint32_t sector) const {
    return at(x, y, 3 * sector - 1);
  }
  float edge_dy(std::uint32_t x, std::uint32_t y, std::uint32_t sector) const {
    return at(x, y, 3 * sector);
  }

  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }
  std::size_t size() const { return data_.size(); }

  bool same_shape(const GteTensor& o) const {
    return wg_ == o.wg_ && hg_ == o.hg_ && dmax_ == o.dmax_ && lambda_ == o.lambda_;
  }

  std::size_t index(std::uint32_t x, std::uint32_t y, std::uint32_t c) const {
    return (static_cast<std::size_t>(y) * wg_ + x) * channels() + c;
  }

 private:
  std::uint32_t wg_ = 0;
  std::uint32_t hg_ = 0;
  std::uint32_t dmax_ = 0;
  double lambda_ = 1.0;
  std::vector<float> data_;
};

// GTE1 binary format: magic "GTE1", little-endian u32 Wg, Hg, D_max,
// f64 lambda, then Wg*Hg*(1+3*D_max) little-endian f32 values.
std::string save_tensor(const GteTensor& t);
GteTensor load_tensor(const std::string& bytes);
GteTensor load_tensor_file(const std::string& path);
void save_tensor_file(const GteTensor& t, const std::string& path);

}  // namespace gte

#endif
