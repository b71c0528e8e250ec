#include "fieldmarket/energy_engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fieldmarket/error.hpp"
#include "source_layout.hpp"

namespace fieldmarket {

PolylinePath::PolylinePath(std::vector<FeatureVector> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) fail(ErrorKind::empty_input, "path has no vertices");
  for (const auto& v : vertices_) {
    require_same_dimension(vertices_.front().dimension(), v.dimension(), "path vertex");
  }
}

ReferenceRule ReferenceRule::fixed(double level) {
  require_finite(level, "reference level");
  return {Kind::fixed, level, 0};
}

ReferenceRule ReferenceRule::rolling_min(std::size_t window) {
  if (window < 1) fail(ErrorKind::invalid_argument, "rolling_min window must be >= 1");
  return {Kind::rolling_min, 0.0, window};
}

ReferenceRule ReferenceRule::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto bad = [&]() -> ReferenceRule {
    fail(ErrorKind::bad_value, "reference_rule must be fixed:<value> or rolling_min:<window>, got '" +
                                   std::string(text) + "'");
  };
  if (tail.empty()) return bad();
  if (head == "fixed") {
    double level = 0.0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), level);
    if (ec != std::errc{} || ptr != tail.data() + tail.size() || !std::isfinite(level)) return bad();
    return fixed(level);
  }
  if (head == "rolling_min") {
    std::size_t window = 0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), window);
    if (ec != std::errc{} || ptr != tail.data() + tail.size()) return bad();
    return rolling_min(window);
  }
  return bad();
}

std::string ReferenceRule::to_string() const {
  if (kind == Kind::rolling_min) return "rolling_min:" + std::to_string(window);
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, level);
  (void)ec;
  return "fixed:" + std::string(buf, ptr);
}

void PotentialModel::validate() const {
  require_finite(mass, "mass");
  if (!(mass > 0.0)) fail(ErrorKind::invalid_argument, "mass must be positive");
  if (reference.kind == ReferenceRule::Kind::rolling_min && reference.window < 1) {
    fail(ErrorKind::invalid_argument, "rolling_min window must be >= 1");
  }
}

double work_closed_form(double k, double q0, double q, double r1, double r2, double floor) {
  for (double x : {k, q0, q, r1, r2, floor}) require_finite(x, "closed-form work input");
  if (!(k > 0.0)) fail(ErrorKind::invalid_argument, "coupling k must be positive");
  if (r1 < floor || r2 < floor) {
    fail(ErrorKind::below_floor, "closed-form work radius below the distance floor");
  }
  return k * q0 * q * (1.0 / r2 - 1.0 / r1);
}

double work_closed_form(std::span<const InformationCharge> sources, double q0,
                        const FeatureVector& from, const FeatureVector& to,
                        const FieldParams& params) {
  params.validate();
  require_same_dimension(from.dimension(), to.dimension(), "work endpoints");
  double sum = 0.0;
  double carry = 0.0;
  for (const auto& s : sources) {
    const double x = work_closed_form(params.coupling, q0, s.magnitude,
                                      info_distance(s.position, from),
                                      info_distance(s.position, to), params.distance_floor);
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + carry;
}

double field_force_work(double mechanical_work) noexcept { return -mechanical_work; }

namespace {

double point_segment_distance(std::span<const double> p, std::span<const double> a,
                              std::span<const double> b) {
  double ab2 = 0.0;
  double ap_ab = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ab2 += (b[i] - a[i]) * (b[i] - a[i]);
    ap_ab += (p[i] - a[i]) * (b[i] - a[i]);
  }
  const double t = ab2 > 0.0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - (a[i] + t * (b[i] - a[i]));
    d2 += d * d;
  }
  return std::sqrt(d2);
}

}  // namespace

LineIntegral integrate_work(std::span<const InformationCharge> sources, double q0,
                            const PolylinePath& path, const FieldParams& params,
                            kernels::QuadratureOptions options) {
  params.validate();
  require_finite(q0, "probe charge");
  const std::size_t dim = path.dimension();
  const detail::SourceLayout layout(sources, dim);
  const auto vertices = path.vertices();

  for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
    for (const auto& src : sources) {
      if (point_segment_distance(src.position.values(), vertices[s].values(),
                                 vertices[s + 1].values()) < params.distance_floor) {
        fail(ErrorKind::degenerate_path, "path segment " + std::to_string(s + 1) +
                                             " passes within the distance floor of source '" +
                                             src.asset_id + "'");
      }
    }
  }
  if (vertices.size() == 1) return {};

  std::vector<double> flat;
  flat.reserve(vertices.size() * dim);
  for (const auto& v : vertices) flat.insert(flat.end(), v.values().begin(), v.values().end());

  const auto segments = kernels::omp::integrate_segments(
      layout.block(), flat, q0, {params.coupling, params.distance_floor}, options);

  LineIntegral total;
  double carry = 0.0;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (!seg.finite) {
      fail(ErrorKind::non_finite,
           "non-finite field sample on path segment " + std::to_string(s + 1));
    }
    const double t = total.work + seg.value;
    carry += std::abs(total.work) >= std::abs(seg.value) ? (total.work - t) + seg.value
                                                         : (seg.value - t) + total.work;
    total.work = t;
    total.evaluations += seg.evaluations;
    total.converged = total.converged && seg.converged;
  }
  total.work += carry;
  return total;
}

double work_line_integral(std::span<const InformationCharge> sources, double q0,
                          const PolylinePath& path, const FieldParams& params) {
  return integrate_work(sources, q0, path, params).work;
}

double market_work(double request_force, double delta_p) {
  require_finite(request_force, "request force");
  require_finite(delta_p, "rate variation");
  return request_force * delta_p;
}

PotentialSample potential_sample(double rate, const PotentialModel& model, double reference) {
  model.validate();
  require_finite(rate, "rate");
  require_finite(reference, "reference");
  if (rate < reference) return {0.0, true};
  return {model.mass * (rate - reference), false};
}

double potential_at_rate(double rate, const PotentialModel& model, double reference) {
  return potential_sample(rate, model, reference).energy;
}

double potential_delta(double v2, double v1, const PotentialModel& model, double reference) {
  const auto w2 = potential_sample(v2, model, reference);
  const auto w1 = potential_sample(v1, model, reference);
  if (!w2.clamped && !w1.clamped) return model.mass * (v2 - v1);
  return w2.energy - w1.energy;
}

}  // namespace fieldmarket
