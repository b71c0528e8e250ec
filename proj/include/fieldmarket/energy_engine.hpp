#pragma once

// Work and potential-energy accounting in the information field.
//
// Sign convention: "work" means the work of the holding force F_m = -a*E,
// so moving a positive probe away from a positive source gives negative
// work. The work of the field force itself is the negation and is exposed
// through field_force_work().

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fieldmarket/field_engine.hpp"
#include "fieldmarket/info_space.hpp"
#include "fieldmarket/kernels.hpp"

namespace fieldmarket {

/// Ordered vertices of a piecewise-linear path. A single vertex is a
/// zero-length path.
class PolylinePath {
 public:
  explicit PolylinePath(std::vector<FeatureVector> vertices);

  std::size_t dimension() const noexcept { return vertices_.front().dimension(); }
  std::span<const FeatureVector> vertices() const noexcept { return vertices_; }
  std::size_t segment_count() const noexcept { return vertices_.size() - 1; }

 private:
  std::vector<FeatureVector> vertices_;
};

struct ReferenceRule {
  enum class Kind { fixed, rolling_min };

  Kind kind = Kind::rolling_min;
  double level = 0.0;      ///< fixed reference, m.u.
  std::size_t window = 20;  ///< rolling-min window, bars

  static ReferenceRule fixed(double level);
  static ReferenceRule rolling_min(std::size_t window);

  /// Accepts `fixed:<value>` or `rolling_min:<window>`.
  static ReferenceRule parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const ReferenceRule&, const ReferenceRule&) = default;
};

/// Linear potential W(v) = mass * (v - reference), floored at zero.
struct PotentialModel {
  double mass = 1.0;
  ReferenceRule reference = ReferenceRule::rolling_min(20);

  void validate() const;
};

/// k * q0 * q * (1/r2 - 1/r1). Both radii must be at least `floor`.
double work_closed_form(double k, double q0, double q, double r1, double r2,
                        double floor = kDefaultDistanceFloor);

/// Closed form summed over every source; path-independent by construction.
double work_closed_form(std::span<const InformationCharge> sources, double q0,
                        const FeatureVector& from, const FeatureVector& to,
                        const FieldParams& params);

double field_force_work(double mechanical_work) noexcept;

struct LineIntegral {
  double work = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/// Numeric -q0 * integral of E . dl along the path, adaptively refined per
/// segment. Paths that pass within the distance floor of a source are
/// rejected with ErrorKind::degenerate_path.
LineIntegral integrate_work(std::span<const InformationCharge> sources, double q0,
                            const PolylinePath& path, const FieldParams& params,
                            kernels::QuadratureOptions options = {});

double work_line_integral(std::span<const InformationCharge> sources, double q0,
                          const PolylinePath& path, const FieldParams& params);

/// L_b = R * delta_p.
double market_work(double request_force, double delta_p);

struct PotentialSample {
  double energy = 0.0;
  bool clamped = false;  ///< rate was below the reference; energy forced to 0
};

PotentialSample potential_sample(double rate, const PotentialModel& model, double reference);

double potential_at_rate(double rate, const PotentialModel& model, double reference);

/// W(v2) - W(v1). When neither rate is clamped this is exactly
/// mass * (v2 - v1), matching market_work(mass, v2 - v1) bit for bit.
double potential_delta(double v2, double v1, const PotentialModel& model, double reference);

}  // namespace fieldmarket
