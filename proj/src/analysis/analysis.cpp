#include "fpsynt/analysis.hpp"

#include "fpsynt/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpsynt {

namespace {

// Loss of dropping k low bits of a word whose LSB weighs 2^lsb.
Rational drop_loss(int k, int lsb) {
  if (k == 0) return 0;
  return dyadic(pow2(k) - 1, lsb);
}

}  // namespace

SignalState input_state(const SifFormat& fmt) {
  SignalState st;
  st.signal = ScaledSignal{fmt, 0};
  st.interval = ValueInterval{fmt.raw_min(), fmt.raw_max(), -fmt.f};
  return st;
}

QuantizedConst quantize_constant(const Rational& value, int width, QuantizeMode mode) {
  for (int i = 0; i < width; ++i) {
    const int f = width - 1 - i;
    const SifFormat fmt{1, i, f};
    const Rational scaled = value * pow2_rational(f);
    const Raw raw = mode == QuantizeMode::Round ? round_half_away(scaled) : floor_rational(scaled);
    if (!fmt.contains(raw)) continue;
    QuantizedConst q;
    q.raw = raw;
    q.quantization_error = abs(value - dyadic(raw, -f));
    q.state.signal = ScaledSignal{fmt, 0};
    q.state.interval = ValueInterval{raw, raw, -f};
    q.state.error = q.quantization_error;
    return q;
  }
  throw CannotFitError("constant " + std::to_string(to_double(value)) + " does not fit in " +
                       std::to_string(width) + " bits");
}

ValueInterval interval_add(const ValueInterval& a, const ValueInterval& b, std::array<bool, 2> negate) {
  if (a.lsb != b.lsb) throw std::logic_error("interval_add: operands are not aligned");
  const Raw alo = negate[0] ? Raw(-a.hi) : a.lo;
  const Raw ahi = negate[0] ? Raw(-a.lo) : a.hi;
  const Raw blo = negate[1] ? Raw(-b.hi) : b.lo;
  const Raw bhi = negate[1] ? Raw(-b.lo) : b.hi;
  return ValueInterval{alo + blo, ahi + bhi, a.lsb};
}

ValueInterval interval_mul(const ValueInterval& a, const ValueInterval& b) {
  const std::array<Raw, 4> corners{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  const auto [lo, hi] = std::minmax_element(corners.begin(), corners.end());
  return ValueInterval{*lo, *hi, a.lsb + b.lsb};
}

ValueInterval interval_shift(const ValueInterval& a, int k) {
  return ValueInterval{floor_shift(a.lo, k), floor_shift(a.hi, k), a.lsb + k};
}

ScaledSignal infer_product_format(const ScaledSignal& a, const ScaledSignal& b) {
  return ScaledSignal{SifFormat{a.fmt.s + b.fmt.s, a.fmt.i + b.fmt.i, a.fmt.f + b.fmt.f}, a.scale + b.scale};
}

SignalState product_state(const SignalState& a, const SignalState& b) {
  SignalState st;
  st.signal = infer_product_format(a.signal, b.signal);
  st.interval = interval_mul(a.interval, b.interval);
  // Relabel: the product of two most-negative values needs one more integer
  // bit than the rule gives, while small ranges free integer bits as sign.
  SifFormat& fmt = st.signal.fmt;
  const int width = fmt.width();
  const int n = bits_needed(st.interval.lo, st.interval.hi);
  fmt.i = std::max(0, n - 1 - fmt.f);
  fmt.s = width - fmt.i - fmt.f;
  if (fmt.s < 1) throw std::logic_error("product range exceeds the product word");
  st.error = propagate_error(NodeKind::Mul, a, b);
  return st;
}

Rational propagate_error(NodeKind kind, const SignalState& a, const SignalState& b) {
  switch (kind) {
    case NodeKind::Add:
      return a.error + b.error;
    case NodeKind::Mul: {
      const Rational ma = a.interval.magnitude();
      const Rational mb = b.interval.magnitude();
      return ma * b.error + mb * a.error + a.error * b.error;
    }
    default:
      throw std::invalid_argument("propagate_error: not a binary arithmetic node");
  }
}

bool FormatStep::changes() const { return dropped > 0 || narrowed; }

FormatStep insert_truncate(const SignalState& node, int target_width, int extra_bits) {
  const SifFormat& fmt = node.signal.fmt;
  const int needed = 1 + fmt.i + fmt.f;
  const int k = std::max(0, needed - target_width) + extra_bits;
  if (k > fmt.f) {
    throw CannotFitError("a " + fmt.str() + " word cannot be narrowed to " + std::to_string(target_width) +
                         " bits without losing integer bits");
  }
  FormatStep step;
  step.dropped = k;
  step.added_error = drop_loss(k, node.signal.lsb());
  step.state.signal = ScaledSignal{SifFormat{1, fmt.i, fmt.f - k}, node.signal.scale};
  step.state.interval = interval_shift(node.interval, k);
  step.state.error = node.error + step.added_error;
  step.narrowed = step.state.signal.width() < fmt.width();
  return step;
}

FormatStep shift_right(const SignalState& node, int k) {
  if (k < 0) throw std::invalid_argument("shift_right: negative shift");
  FormatStep step;
  step.dropped = k;
  step.added_error = drop_loss(k, node.signal.lsb());
  step.state.signal = ScaledSignal{node.signal.fmt, node.signal.scale + k};
  step.state.interval = interval_shift(node.interval, k);
  step.state.error = node.error + step.added_error;
  return step;
}

PrescaleResult insert_prescale(const SignalState& a, const SignalState& b, std::array<bool, 2> negate,
                               std::array<int, 2> shifts, int width_limit, int result_width) {
  const int lsb_a = a.signal.lsb() + shifts[0];
  const int lsb_b = b.signal.lsb() + shifts[1];
  const int lsb = std::max(lsb_a, lsb_b);
  PrescaleResult r;
  r.operands[0] = shift_right(a, shifts[0] + (lsb - lsb_a));
  r.operands[1] = shift_right(b, shifts[1] + (lsb - lsb_b));

  SignalState& sum = r.sum;
  sum.interval = interval_add(r.operands[0].state.interval, r.operands[1].state.interval, negate);
  const int scale = std::max(r.operands[0].state.signal.scale, r.operands[1].state.signal.scale);
  const int f = scale - lsb;
  const int n = bits_needed(sum.interval.lo, sum.interval.hi);
  const int i = std::max(0, n - 1 - f);
  const int width = result_width > 0 ? result_width : 1 + i + f;
  if (width - i - f < 1 || width > width_limit) {
    throw CannotFitError("sum needs " + std::to_string(1 + i + f) + " bits, more than " +
                         std::to_string(width_limit));
  }
  sum.signal = ScaledSignal{SifFormat{width - i - f, i, f}, scale};
  sum.error = propagate_error(NodeKind::Add, r.operands[0].state, r.operands[1].state);
  return r;
}

PrescaleResult insert_prescale(const SignalState& a, const SignalState& b, std::array<bool, 2> negate,
                               int width_limit) {
  for (int total = 0; total <= 2 * width_limit; ++total) {
    for (int ka = 0; ka <= total; ++ka) {
      try {
        return insert_prescale(a, b, negate, {ka, total - ka}, width_limit);
      } catch (const CannotFitError&) {
      }
    }
  }
  throw CannotFitError("operands cannot be aligned within " + std::to_string(width_limit) + " bits");
}

}  // namespace fpsynt
