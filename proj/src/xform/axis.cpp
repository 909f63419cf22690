#include "tdse/xform/axis.hpp"

#include <cmath>

namespace tdse::xform {

using contour::index;

BlockLayout BlockLayout::of(const contour::GammaQuadrature& q) {
  BlockLayout l;
  for (Block b : contour::kBlocks) {
    l.offset[index(b)] = q.offset(b);
    l.size[index(b)] = q.size(b);
  }
  l.total = q.total();
  return l;
}

RVec physical_grid(int M) {
  RVec x(M);
  for (int j = 0; j < M; ++j) x[j] = -1.0 + 2.0 * j / M;
  return x;
}

namespace {

// exp(sign * i * zeta_k * x_j), rows indexed by node or grid per `node_rows`.
CMat kernel(const std::vector<cplx>& z, const RVec& x, double sign, bool node_rows) {
  const int N = static_cast<int>(z.size()), M = static_cast<int>(x.size());
  CMat A = node_rows ? CMat(N, M) : CMat(M, N);
  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < M; ++j) {
      const cplx v = std::exp(sign * kI * z[k] * x[j]);
      if (node_rows) A(k, j) = v; else A(j, k) = v;
    }
  }
  return A;
}

}  // namespace

void AxisTransform::add_dense(std::vector<Stage>& list, Block b, bool inverse, int priority,
                              CMat m) {
  Stage s;
  s.kind = Stage::Kind::Dense;
  s.block = b;
  s.inverse = inverse;
  s.priority = priority;
  s.id = next_id_++;
  s.mat = static_cast<int>(mats_.size());
  s.in_len = static_cast<int>(m.cols());
  s.out_len = static_cast<int>(m.rows());
  mats_.push_back(std::move(m));
  list.push_back(s);
}

AxisTransform::AxisTransform(std::shared_ptr<const contour::GammaQuadrature> quad,
                             TransformOptions opts)
    : quad_(std::move(quad)) {
  const auto& q = *quad_;
  const int M = q.M(), NE = q.cfg.NE;
  layout_ = BlockLayout::of(q);
  x_ = physical_grid(M);
  scale_pos_ = (q.H * x_.array()).exp();
  scale_neg_ = (-q.H * x_.array()).exp();
  e3_ = SSFFTPlan::with_spacing(M, NE, q.block_nodes(Block::E3).front().real(), q.h);
  e1_ = SSFFTPlan::with_spacing(M, NE, q.block_nodes(Block::E1).front().real(), q.h);

  for (Block b : {Block::E1, Block::E3}) {
    Stage f;
    f.kind = Stage::Kind::Ssfft;
    f.block = b;
    f.priority = 2;
    f.id = next_id_++;
    f.in_len = M;
    f.out_len = NE;
    fwd_[index(b)].push_back(f);
    Stage i = f;
    i.inverse = true;
    i.priority = 1;
    i.id = next_id_++;
    i.in_len = NE;
    i.out_len = M;
    inv_[index(b)].push_back(i);
  }
  for (Block b : {Block::A1, Block::A3}) {
    add_dense(fwd_[index(b)], b, false, 0, kernel(q.block_nodes(b), x_, -1.0, true));
    add_dense(inv_[index(b)], b, true, 3, kernel(q.block_nodes(b), x_, +1.0, false));
  }

  const int NC = q.size(Block::C);
  if (NC == 0) return;
  bool cheb = opts.c_method == CMethod::Chebyshev;
  if (opts.c_method == CMethod::Auto) {
    const int nc0 = static_cast<int>(std::ceil(2.0 * q.H)) + 8;
    cheb = NC > 4 * nc0;
  }
  if (cheb) {
    const double tol = opts.cheb_tol > 0.0 ? opts.cheb_tol : q.cfg.eps;
    cheb_ = build_cheb_plan(q.H, x_, q.tau_c, tol);
    cheb_used_ = opts.c_method == CMethod::Chebyshev || NC > 4 * cheb_.nc;
  }
  auto& f = fwd_[index(Block::C)];
  auto& i = inv_[index(Block::C)];
  if (cheb_used_) {
    add_dense(f, Block::C, false, 1, cheb_.lambda);
    add_dense(f, Block::C, false, 3, cheb_.T);
    add_dense(i, Block::C, true, 0, cheb_.T.transpose());
    add_dense(i, Block::C, true, 2, cheb_.rho);
  } else {
    add_dense(f, Block::C, false, 1, kernel(q.block_nodes(Block::C), x_, -1.0, true));
    add_dense(i, Block::C, true, 2, kernel(q.block_nodes(Block::C), x_, +1.0, false));
  }
}

const RVec& AxisTransform::e_scale(Block b, bool inverse) const {
  return ((b == Block::E3) != inverse) ? scale_neg_ : scale_pos_;
}

CMat AxisTransform::apply(const Stage& s, const CMat& in, int axis) const {
  const Eigen::Index along = axis == 0 ? in.rows() : in.cols();
  if (along != s.in_len) throw ConfigError("transform stage: length mismatch");
  if (s.kind == Stage::Kind::Dense) {
    const CMat& A = mats_[s.mat];
    if (axis == 0) return A * in;
    return in * A.transpose();
  }
  const SSFFTPlan& plan = e_plan(s.block);
  const RVec& sc = e_scale(s.block, s.inverse);
  const int count = static_cast<int>(axis == 0 ? in.cols() : in.rows());
  CMat out = axis == 0 ? CMat(s.out_len, in.cols()) : CMat(in.rows(), s.out_len);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < count; ++c) {
    std::vector<cplx> a(s.in_len), b(s.out_len);
    for (int j = 0; j < s.in_len; ++j) {
      const cplx v = axis == 0 ? in(j, c) : in(c, j);
      a[j] = s.inverse ? v : v * sc[j];
    }
    if (s.inverse) plan.inverse(a.data(), b.data()); else plan.forward(a.data(), b.data());
    for (int k = 0; k < s.out_len; ++k) {
      const cplx v = s.inverse ? b[k] * sc[k] : b[k];
      if (axis == 0) out(k, c) = v; else out(c, k) = v;
    }
  }
  return out;
}

}  // namespace tdse::xform
