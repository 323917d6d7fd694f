#include "iim/corrections.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace iim {

namespace {

/// Signed distance from the crossing to the flank node's across-sample, and
/// the stencil bookkeeping shared by both correction kinds. For the lower
/// node the across-sample sits at +h_plus; for the upper node at -(h - h_plus).
double sample_offset(const IntersectionRecord& rec, NodeFlank flank, double h) {
  return flank == NodeFlank::lower ? rec.h_plus : rec.h_plus - h;
}

inline int64_t key_of(const GridSpec& spec, int ix, int iy) {
  return static_cast<int64_t>(spec.wrap(iy)) * spec.points() + spec.wrap(ix);
}

struct FlankNodes {
  int lx, ly, ux, uy;
};

FlankNodes flank_nodes(const GridSpec& spec, const IntersectionRecord& rec) {
  FlankNodes f;
  f.lx = rec.base_ix;
  f.ly = rec.base_iy;
  f.ux = rec.axis == 0 ? spec.wrap(rec.base_ix + 1) : rec.base_ix;
  f.uy = rec.axis == 0 ? rec.base_iy : spec.wrap(rec.base_iy + 1);
  return f;
}

LineJumps velocity_line_jumps(const JumpSet& j, int comp, int axis) {
  return {j.jump_u[comp], j.jump_Du(comp, axis), j.jump_D2u[comp](axis, axis)};
}

LineJumps pressure_line_jumps(const JumpSet& j, int axis) {
  return {j.jump_p, j.jump_Dp[axis], j.jump_D2p(axis, axis)};
}

LineJumps advection_line_jumps(const JumpSet& j, int comp, int axis) {
  // second derivatives of the advection field are not tracked; dropping them
  // costs one order at irregular points, which the scheme tolerates
  return {j.jump_advection[comp], j.jump_Dadv(comp, axis), 0.0};
}

void require_aligned(const std::vector<IntersectionRecord>& records,
                     const std::vector<JumpSet>& jumps, const char* who) {
  if (records.size() != jumps.size())
    throw MissingJumps(std::string(who) + ": " + std::to_string(records.size()) +
                       " intersections but " + std::to_string(jumps.size()) + " jump sets");
}

}  // namespace

double stencil_correction_first(const LineJumps& jump, const IntersectionRecord& rec,
                                NodeFlank flank, const GridSpec& spec) {
  const double h = spec.spacing();
  const double d = sample_offset(rec, flank, h);
  return rec.side_base * jump.taylor(d) / (2.0 * h);
}

double stencil_correction_second(const LineJumps& jump, const IntersectionRecord& rec,
                                 NodeFlank flank, const GridSpec& spec) {
  const double h = spec.spacing();
  const double d = sample_offset(rec, flank, h);
  const double sign = flank == NodeFlank::lower ? rec.side_base : -rec.side_base;
  return sign * jump.taylor(d) / (h * h);
}

void CorrectionField::add(int ix, int iy, double value) {
  if (value == 0.0) return;
  entries_[key_of(spec_, ix, iy)] += value;
}

double CorrectionField::at(int ix, int iy) const {
  auto it = entries_.find(key_of(spec_, ix, iy));
  return it == entries_.end() ? 0.0 : it->second;
}

GridFunctionD CorrectionField::to_grid() const {
  GridFunctionD f(spec_);
  add_to(f);
  return f;
}

void CorrectionField::add_to(GridFunctionD& f) const {
  for (const auto& [key, value] : entries_) {
    const auto [ix, iy] = node_of(key);
    f(ix, iy) += value;
  }
}

double CorrectionField::max_abs() const {
  double m = 0.0;
  for (const auto& [key, value] : entries_) m = std::max(m, std::abs(value));
  return m;
}

CorrectionField& CorrectionField::operator+=(const CorrectionField& o) {
  for (const auto& [key, value] : o.entries_) entries_[key] += value;
  return *this;
}

VectorCorrectionField correction_advection_gradient(const GridSpec& spec,
                                                    const std::vector<IntersectionRecord>& records,
                                                    const std::vector<JumpSet>& jumps,
                                                    const VectorGridFunctionD& u) {
  require_aligned(records, jumps, "correction_advection_gradient");
  VectorCorrectionField out(spec);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto f = flank_nodes(spec, rec);
    for (int comp = 0; comp < 2; ++comp) {
      const LineJumps lj = velocity_line_jumps(jumps[r], comp, rec.axis);
      out.comp[comp].add(f.lx, f.ly, u[rec.axis](f.lx, f.ly) * stencil_correction_first(
                                         lj, rec, NodeFlank::lower, spec));
      out.comp[comp].add(f.ux, f.uy, u[rec.axis](f.ux, f.uy) * stencil_correction_first(
                                         lj, rec, NodeFlank::upper, spec));
    }
  }
  return out;
}

VectorCorrectionField correction_velocity_laplacian(const GridSpec& spec,
                                                    const std::vector<IntersectionRecord>& records,
                                                    const std::vector<JumpSet>& jumps) {
  require_aligned(records, jumps, "correction_velocity_laplacian");
  VectorCorrectionField out(spec);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto f = flank_nodes(spec, rec);
    for (int comp = 0; comp < 2; ++comp) {
      const LineJumps lj = velocity_line_jumps(jumps[r], comp, rec.axis);
      out.comp[comp].add(f.lx, f.ly, stencil_correction_second(lj, rec, NodeFlank::lower, spec));
      out.comp[comp].add(f.ux, f.uy, stencil_correction_second(lj, rec, NodeFlank::upper, spec));
    }
  }
  return out;
}

CorrectionField correction_advection_divergence(const GridSpec& spec,
                                                const std::vector<IntersectionRecord>& records,
                                                const std::vector<JumpSet>& jumps) {
  require_aligned(records, jumps, "correction_advection_divergence");
  CorrectionField out(spec);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto f = flank_nodes(spec, rec);
    // divergence takes the axis-th derivative of the axis-th component
    const LineJumps lj = advection_line_jumps(jumps[r], rec.axis, rec.axis);
    out.add(f.lx, f.ly, stencil_correction_first(lj, rec, NodeFlank::lower, spec));
    out.add(f.ux, f.uy, stencil_correction_first(lj, rec, NodeFlank::upper, spec));
  }
  return out;
}

CorrectionField correction_pressure_poisson(const GridSpec& spec,
                                            const std::vector<IntersectionRecord>& records,
                                            const std::vector<JumpSet>& jumps) {
  require_aligned(records, jumps, "correction_pressure_poisson");
  CorrectionField out(spec);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto f = flank_nodes(spec, rec);
    const LineJumps lj = pressure_line_jumps(jumps[r], rec.axis);
    // discrete laplacian of the sampled field = one-sided laplacian + C5,
    // hence the opposite sign of the bring-over correction
    out.add(f.lx, f.ly, -stencil_correction_second(lj, rec, NodeFlank::lower, spec));
    out.add(f.ux, f.uy, -stencil_correction_second(lj, rec, NodeFlank::upper, spec));
  }
  return out;
}

VectorCorrectionField correction_pressure_gradient(const GridSpec& spec,
                                                   const std::vector<IntersectionRecord>& records,
                                                   const std::vector<JumpSet>& jumps) {
  require_aligned(records, jumps, "correction_pressure_gradient");
  VectorCorrectionField out(spec);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto f = flank_nodes(spec, rec);
    const LineJumps lj = pressure_line_jumps(jumps[r], rec.axis);
    out.comp[rec.axis].add(f.lx, f.ly, stencil_correction_first(lj, rec, NodeFlank::lower, spec));
    out.comp[rec.axis].add(f.ux, f.uy, stencil_correction_first(lj, rec, NodeFlank::upper, spec));
  }
  return out;
}

void dump_corrections(const std::string& path,
                      const std::vector<std::pair<std::string, const CorrectionField*>>& fields) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "ix,iy,field,value\n";
  for (const auto& [name, field] : fields) {
    std::vector<int64_t> keys;
    keys.reserve(field->entries().size());
    for (const auto& [k, v] : field->entries()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (int64_t k : keys) {
      const auto [ix, iy] = field->node_of(k);
      out << ix << ',' << iy << ',' << name << ',' << field->entries().at(k) << '\n';
    }
  }
}

VectorCorrectionField build_C1(const GridSpec& spec, const std::vector<CrossingEvent>& events,
                               const std::vector<JumpSet>& jumps) {
  VectorCorrectionField out(spec);
  for (std::size_t e = 0; e < events.size(); ++e) {
    const auto& ev = events[e];
    const double dir = ev.side_after > 0 ? 1.0 : -1.0;  // jump from old side to new side
    const Vec2 fix = -ev.fraction * dir * jumps[e].jump_ut;
    out.comp[0].add(ev.ix, ev.iy, fix.x());
    out.comp[1].add(ev.ix, ev.iy, fix.y());
  }
  return out;
}

VectorCorrectionField build_C7(const GridSpec& spec, const std::vector<CrossingEvent>& events,
                               const std::vector<JumpSet>& jumps,
                               const std::vector<CrossingEvent>& events_prev,
                               const std::vector<JumpSet>& jumps_prev,
                               bool single_level_advection) {
  VectorCorrectionField out(spec);
  for (std::size_t e = 0; e < events.size(); ++e) {
    const auto& ev = events[e];
    const JumpSet& j = jumps[e];
    const double dir = ev.side_after > 0 ? 1.0 : -1.0;
    // advection levels both sit before the crossing; weights sum to one
    const Vec2 adv_fix = dir * j.jump_advection;
    // diffusion: only the old level (weight 1/2) needs the side switch
    const Vec2 diff_fix = 0.5 * dir * j.jump_lap_u();
    // pressure gradient: consistent with the node side at the half-time, so a
    // fix is needed only when the crossing happens after the midpoint; on the
    // first step the pressure is at the old time level and always needs it
    const bool pressure_lags = single_level_advection || ev.fraction > 0.5;
    const Vec2 press_fix = pressure_lags ? Vec2(dir * j.jump_Dp) : Vec2(Vec2::Zero());
    const Vec2 total = -adv_fix - press_fix + diff_fix;
    out.comp[0].add(ev.ix, ev.iy, total.x());
    out.comp[1].add(ev.ix, ev.iy, total.y());
  }
  if (!single_level_advection) {
    // nodes crossed during the previous interval: the n-1 advection level
    // still sees the old side with extrapolation weight -1/2
    for (std::size_t e = 0; e < events_prev.size(); ++e) {
      const auto& ev = events_prev[e];
      const double dir = ev.side_after > 0 ? 1.0 : -1.0;
      const Vec2 total = -(-0.5) * dir * jumps_prev[e].jump_advection;
      out.comp[0].add(ev.ix, ev.iy, total.x());
      out.comp[1].add(ev.ix, ev.iy, total.y());
    }
  }
  return out;
}

}  // namespace iim
