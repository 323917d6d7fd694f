#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iim/geometry.hpp"
#include "iim/grid.hpp"
#include "iim/jumps.hpp"

namespace iim {

/// Jumps of one scalar quantity restricted to a gridline direction:
/// [v], [dv/dx_axis], [d2v/dx_axis2].
struct LineJumps {
  double j0 = 0.0, j1 = 0.0, j2 = 0.0;

  /// Jump Taylor polynomial at signed distance d from the crossing.
  double taylor(double d) const { return j0 + d * j1 + 0.5 * d * d * j2; }
};

enum class NodeFlank { lower, upper };

/// Correction added to the centered first difference at one node so that the
/// corrected value approximates the one-sided derivative on the node's side.
/// The flank picks the node of the crossed segment.
double stencil_correction_first(const LineJumps& jump, const IntersectionRecord& rec,
                                NodeFlank flank, const GridSpec& spec);

/// Same for the 1D second difference (the Laplacian contribution of one axis).
double stencil_correction_second(const LineJumps& jump, const IntersectionRecord& rec,
                                 NodeFlank flank, const GridSpec& spec);

/// Sparse per-node corrections added to operator outputs. Values accumulate.
class CorrectionField {
 public:
  CorrectionField() = default;
  explicit CorrectionField(const GridSpec& spec) : spec_(spec) {}

  const GridSpec& spec() const { return spec_; }
  void add(int ix, int iy, double value);
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  double at(int ix, int iy) const;

  const std::unordered_map<int64_t, double>& entries() const { return entries_; }
  std::pair<int, int> node_of(int64_t key) const {
    return {static_cast<int>(key % spec_.points()), static_cast<int>(key / spec_.points())};
  }

  /// Dense field carrying the corrections (zero elsewhere).
  GridFunctionD to_grid() const;
  void add_to(GridFunctionD& f) const;
  double max_abs() const;

  CorrectionField& operator+=(const CorrectionField& o);
  friend CorrectionField operator*(double c, CorrectionField f) {
    for (auto& [k, v] : f.entries_) v *= c;
    return f;
  }

 private:
  GridSpec spec_;
  std::unordered_map<int64_t, double> entries_;
};

struct VectorCorrectionField {
  CorrectionField comp[2];

  explicit VectorCorrectionField(const GridSpec& spec = GridSpec())
      : comp{CorrectionField(spec), CorrectionField(spec)} {}
  bool empty() const { return comp[0].empty() && comp[1].empty(); }
  void add_to(VectorGridFunctionD& v) const {
    comp[0].add_to(v[0]);
    comp[1].add_to(v[1]);
  }
  VectorCorrectionField& operator+=(const VectorCorrectionField& o) {
    comp[0] += o.comp[0];
    comp[1] += o.comp[1];
    return *this;
  }
  friend VectorCorrectionField operator*(double c, VectorCorrectionField f) {
    f.comp[0] = c * f.comp[0];
    f.comp[1] = c * f.comp[1];
    return f;
  }
};

// ---------------------------------------------------------------------------
// per-level stencil-correction builders. records and jumps run in parallel.

/// Correction to u . grad_h(u): component i collects u_axis(node) times the
/// first-difference correction of du_i/dx_axis.
VectorCorrectionField correction_advection_gradient(const GridSpec& spec,
                                                    const std::vector<IntersectionRecord>& records,
                                                    const std::vector<JumpSet>& jumps,
                                                    const VectorGridFunctionD& u);

/// Correction to laplacian_h(u) per velocity component.
VectorCorrectionField correction_velocity_laplacian(const GridSpec& spec,
                                                    const std::vector<IntersectionRecord>& records,
                                                    const std::vector<JumpSet>& jumps);

/// Correction to divergence_h applied to the advection field (C4): uses
/// [u.grad u] and its first derivatives.
CorrectionField correction_advection_divergence(const GridSpec& spec,
                                                const std::vector<IntersectionRecord>& records,
                                                const std::vector<JumpSet>& jumps);

/// Pressure-Poisson correction (C5): the discrete Laplacian applied to the
/// sampled pressure equals the one-sided Laplacian plus this field.
CorrectionField correction_pressure_poisson(const GridSpec& spec,
                                            const std::vector<IntersectionRecord>& records,
                                            const std::vector<JumpSet>& jumps);

/// Correction to grad_h(p) (C6).
VectorCorrectionField correction_pressure_gradient(const GridSpec& spec,
                                                   const std::vector<IntersectionRecord>& records,
                                                   const std::vector<JumpSet>& jumps);

// ---------------------------------------------------------------------------
// time-crossing corrections. jumps run parallel to events and are evaluated
// at the crossing location and time.

/// C1: corrects (u^{n+1} - u^n)/tau for the kink in u_t at nodes the
/// interface crosses; the update is made consistent with the end side.
VectorCorrectionField build_C1(const GridSpec& spec, const std::vector<CrossingEvent>& events,
                               const std::vector<JumpSet>& jumps);

/// Debug dump: one (node, field, value) triple per sparse entry, CSV.
void dump_corrections(const std::string& path,
                      const std::vector<std::pair<std::string, const CorrectionField*>>& fields);

/// C7: per-term side fixes at crossed nodes so advection, pressure gradient
/// and diffusion are each evaluated consistently on the end side, weighted by
/// the term's time-level coefficients. events_prev covers the previous
/// interval (advection level n-1); empty on the first step.
VectorCorrectionField build_C7(const GridSpec& spec, const std::vector<CrossingEvent>& events,
                               const std::vector<JumpSet>& jumps,
                               const std::vector<CrossingEvent>& events_prev,
                               const std::vector<JumpSet>& jumps_prev, bool single_level_advection);

}  // namespace iim
