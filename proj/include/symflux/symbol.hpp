#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symflux {

// Independent/dependent variables of the problem, in canonical order.
enum class BaseVar : uint32_t { X = 0, T = 1, U = 2, Nu = 3, H = 4, Tau = 5 };

enum class Axis { X, T };

// One interned symbol: a base variable, an ansatz coefficient, a jet variable
// w_(a,b) = d^{a+b}u / dx^a dt^b, or a grid sample u(x + p/2*h, t + q*tau).
// The 32-bit id is ordered so that raw numeric comparison realises the
// canonical symbol order: base vars < coefficients < jets (by total order,
// then x-order) < samples.
class Symbol {
 public:
  static Symbol base(BaseVar v) { return Symbol(static_cast<uint32_t>(v)); }

  static Symbol coeff(uint32_t index) {
    if (index >= (1u << 24)) throw std::invalid_argument("coefficient index too large");
    return Symbol(kCoeff | index);
  }

  static Symbol jet(int x_order, int t_order) {
    if (x_order < 0 || t_order < 0 || x_order + t_order < 1 || x_order + t_order > 4000)
      throw std::invalid_argument("invalid jet orders");
    return Symbol(kJet | (static_cast<uint32_t>(x_order + t_order) << 12) |
                  static_cast<uint32_t>(x_order));
  }

  // p2 = twice the spatial offset, so half-integer stencils stay integral.
  static Symbol sample(int p2, int q) {
    if (p2 < -2000 || p2 > 2000 || q < -2000 || q > 2000)
      throw std::invalid_argument("sample offset out of range");
    return Symbol(kSample | (static_cast<uint32_t>(p2 + 2048) << 12) |
                  static_cast<uint32_t>(q + 2048));
  }

  bool is_base() const { return id_ < kCoeff; }
  bool is_coeff() const { return (id_ & kKindMask) == kCoeff; }
  bool is_jet() const { return (id_ & kKindMask) == kJet; }
  bool is_sample() const { return (id_ & kKindMask) == kSample; }

  BaseVar base_var() const {
    require(is_base(), "not a base variable");
    return static_cast<BaseVar>(id_);
  }
  uint32_t coeff_index() const {
    require(is_coeff(), "not a coefficient");
    return id_ & kPayloadMask;
  }
  int jet_x() const {
    require(is_jet(), "not a jet");
    return static_cast<int>(id_ & 0xfff);
  }
  int jet_t() const { return jet_order() - jet_x(); }
  int jet_order() const {
    require(is_jet(), "not a jet");
    return static_cast<int>((id_ & kPayloadMask) >> 12);
  }
  int sample_p2() const {
    require(is_sample(), "not a sample");
    return static_cast<int>((id_ & kPayloadMask) >> 12) - 2048;
  }
  int sample_q() const {
    require(is_sample(), "not a sample");
    return static_cast<int>(id_ & 0xfff) - 2048;
  }

  std::string name() const;

  auto operator<=>(const Symbol&) const = default;
  uint32_t raw() const { return id_; }

 private:
  static constexpr uint32_t kCoeff = 0x10000000;
  static constexpr uint32_t kJet = 0x20000000;
  static constexpr uint32_t kSample = 0x30000000;
  static constexpr uint32_t kKindMask = 0xf0000000;
  static constexpr uint32_t kPayloadMask = 0x0fffffff;

  explicit Symbol(uint32_t id) : id_(id) {}
  static void require(bool ok, const char* msg) {
    if (!ok) throw std::logic_error(msg);
  }

  uint32_t id_;
};

inline Symbol sym_x() { return Symbol::base(BaseVar::X); }
inline Symbol sym_t() { return Symbol::base(BaseVar::T); }
inline Symbol sym_u() { return Symbol::base(BaseVar::U); }
inline Symbol sym_nu() { return Symbol::base(BaseVar::Nu); }
inline Symbol sym_h() { return Symbol::base(BaseVar::H); }
inline Symbol sym_tau() { return Symbol::base(BaseVar::Tau); }

inline std::string Symbol::name() const {
  if (is_base()) {
    switch (base_var()) {
      case BaseVar::X: return "x";
      case BaseVar::T: return "t";
      case BaseVar::U: return "u";
      case BaseVar::Nu: return "nu";
      case BaseVar::H: return "h";
      case BaseVar::Tau: return "tau";
    }
    throw std::logic_error("unreachable");
  }
  if (is_coeff()) return "c" + std::to_string(coeff_index());
  if (is_jet()) {
    std::string s = "u_";
    s.append(static_cast<size_t>(jet_x()), 'x');
    s.append(static_cast<size_t>(jet_t()), 't');
    return s;
  }
  // sample: offsets rendered as integers or halves
  int p2 = sample_p2();
  std::string p = (p2 % 2 == 0) ? std::to_string(p2 / 2) : std::to_string(p2) + "/2";
  return "u[" + p + "," + std::to_string(sample_q()) + "]";
}

}  // namespace symflux
