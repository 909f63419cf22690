#include "tdse/xform/transform.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace tdse::xform {

using contour::index;

Transform1D::Transform1D(std::shared_ptr<const contour::GammaQuadrature> quad,
                         TransformOptions opts)
    : axis_(std::make_shared<AxisTransform>(std::move(quad), opts)),
      counters_(std::make_shared<TransformCounters>()) {}

CVec Transform1D::forward(const CVec& f) const {
  if (f.size() != M()) throw ConfigError("forward_1d: expected " + std::to_string(M()) + " samples");
  ++counters_->forward;
  const auto& L = layout();
  CVec out(L.total);
  CMat cur0 = f;  // M x 1
  for (Block b : contour::kBlocks) {
    const auto& stages = axis_->forward_stages(b);
    if (stages.empty()) continue;
    CMat cur = cur0;
    for (const Stage& s : stages) cur = axis_->apply(s, cur, 0);
    out.segment(L.off(b), L.len(b)) = cur.col(0);
  }
  return out;
}

SpectralCoeffs1D Transform1D::forward_coeffs(const CVec& f) const {
  return {layout(), forward(f)};
}

CVec Transform1D::inverse(const CVec& fhat) const {
  const auto& L = layout();
  if (fhat.size() != L.total) throw ConfigError("inverse_1d: coefficient count mismatch");
  ++counters_->inverse;
  CVec out = CVec::Zero(M());
  for (Block b : contour::kBlocks) {
    auto stages = axis_->inverse_stages(b);
    if (stages.empty()) continue;
    std::stable_sort(stages.begin(), stages.end(),
                     [](const Stage& a, const Stage& c) { return a.priority < c.priority; });
    CMat cur = fhat.segment(L.off(b), L.len(b));
    for (const Stage& s : stages) cur = axis_->apply(s, cur, 0);
    out += cur.col(0);
  }
  return out;
}

Transform2D::Transform2D(std::shared_ptr<const contour::GammaQuadrature> q0,
                         std::shared_ptr<const contour::GammaQuadrature> q1,
                         TransformOptions opts)
    : ax0_(std::make_shared<AxisTransform>(std::move(q0), opts)),
      ax1_(std::make_shared<AxisTransform>(std::move(q1), opts)),
      counters_(std::make_shared<TransformCounters>()) {
  int i = 0;
  for (Block b0 : {Block::E1, Block::E3}) {
    for (Block b1 : {Block::E1, Block::E3}) ee_[i++] = SSFFT2DPlan(ax0_->e_plan(b0), ax1_->e_plan(b1));
  }
}

const SSFFT2DPlan& Transform2D::ee_plan(Block b0, Block b1) const {
  return ee_[(b0 == Block::E3 ? 2 : 0) + (b1 == Block::E3 ? 1 : 0)];
}

std::vector<Transform2D::Tagged> Transform2D::merged(Block b0, Block b1, bool inverse) const {
  std::vector<Tagged> out;
  for (const Stage& s : inverse ? ax0_->inverse_stages(b0) : ax0_->forward_stages(b0)) out.push_back({&s, 0});
  for (const Stage& s : inverse ? ax1_->inverse_stages(b1) : ax1_->forward_stages(b1)) out.push_back({&s, 1});
  std::stable_sort(out.begin(), out.end(), [](const Tagged& a, const Tagged& b) {
    return a.stage->priority < b.stage->priority;
  });
  return out;
}

namespace {
bool is_e(Block b) { return b == Block::E1 || b == Block::E3; }
int tag(const Stage& s, int axis) { return axis * 100000 + s.id; }
}  // namespace

CMat Transform2D::forward(const CMat& f) const {
  const int M0 = ax0_->M(), M1 = ax1_->M();
  if (f.rows() != M0 || f.cols() != M1) throw ConfigError("forward_2d: grid shape mismatch");
  ++counters_->forward;
  const auto& L0 = ax0_->layout();
  const auto& L1 = ax1_->layout();
  CMat out(L0.total, L1.total);
  // Intermediates keyed by the stage sequence that produced them; blocks
  // sharing an inner stage reuse its result.
  std::map<std::vector<int>, CMat> memo;
  for (Block b0 : contour::kBlocks) {
    if (L0.len(b0) == 0) continue;
    for (Block b1 : contour::kBlocks) {
      if (L1.len(b1) == 0) continue;
      auto dst = out.block(L0.off(b0), L1.off(b1), L0.len(b0), L1.len(b1));
      if (is_e(b0) && is_e(b1)) {
        CMat tmp(L0.len(b0), L1.len(b1));
        ee_plan(b0, b1).forward(f.data(), ax0_->e_scale(b0, false).data(),
                                ax1_->e_scale(b1, false).data(), tmp.data());
        dst = tmp;
        continue;
      }
      const CMat* cur = &f;
      std::vector<int> key;
      for (const Tagged& t : merged(b0, b1, false)) {
        key.push_back(tag(*t.stage, t.axis));
        auto it = memo.find(key);
        if (it == memo.end()) {
          const AxisTransform& ax = t.axis == 0 ? *ax0_ : *ax1_;
          it = memo.emplace(key, ax.apply(*t.stage, *cur, t.axis)).first;
        }
        cur = &it->second;
      }
      dst = *cur;
    }
  }
  return out;
}

SpectralCoeffs2D Transform2D::forward_coeffs(const CMat& f) const {
  return {ax0_->layout(), ax1_->layout(), forward(f)};
}

CMat Transform2D::inverse(const CMat& fhat) const {
  const auto& L0 = ax0_->layout();
  const auto& L1 = ax1_->layout();
  if (fhat.rows() != L0.total || fhat.cols() != L1.total) {
    throw ConfigError("inverse_2d: coefficient shape mismatch");
  }
  ++counters_->inverse;
  const int M0 = ax0_->M(), M1 = ax1_->M();
  CMat out = CMat::Zero(M0, M1);
  // Blocks whose outermost stage coincides are summed before applying it.
  struct Group {
    Tagged last;
    CMat acc;
  };
  std::map<int, Group> groups;
  for (Block b0 : contour::kBlocks) {
    if (L0.len(b0) == 0) continue;
    for (Block b1 : contour::kBlocks) {
      if (L1.len(b1) == 0) continue;
      const CMat blk = fhat.block(L0.off(b0), L1.off(b1), L0.len(b0), L1.len(b1));
      if (is_e(b0) && is_e(b1)) {
        ee_plan(b0, b1).inverse_add(blk.data(), ax0_->e_scale(b0, true).data(),
                                    ax1_->e_scale(b1, true).data(), out.data());
        continue;
      }
      const auto stages = merged(b0, b1, true);
      CMat cur = blk;
      for (std::size_t s = 0; s + 1 < stages.size(); ++s) {
        const AxisTransform& ax = stages[s].axis == 0 ? *ax0_ : *ax1_;
        cur = ax.apply(*stages[s].stage, cur, stages[s].axis);
      }
      const Tagged last = stages.back();
      auto [it, fresh] = groups.try_emplace(tag(*last.stage, last.axis), Group{last, CMat()});
      if (fresh) it->second.acc = std::move(cur);
      else it->second.acc += cur;
    }
  }
  for (auto& [k, g] : groups) {
    const AxisTransform& ax = g.last.axis == 0 ? *ax0_ : *ax1_;
    out += ax.apply(*g.last.stage, g.acc, g.last.axis);
  }
  return out;
}

}  // namespace tdse::xform
