#include "hrmc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hrmc {

namespace {

constexpr double kEtaClamp = 40.0;

double clamp_eta(double eta) { return std::clamp(eta, -kEtaClamp, kEtaClamp); }
bool in_range(double eta) { return std::abs(eta) <= kEtaClamp; }

// phi_i . x_i(theta) for an affine feature row
double exponent(const AffineFeatures& f, const Mat& phi, int local_i, const Vec& theta) {
  double eta = phi(local_i, 0);
  const auto& src = f.sources(local_i);
  for (size_t j = 0; j < src.size(); ++j) eta += phi(local_i, 1 + j) * theta[src[j]];
  return eta;
}

}  // namespace

AffineFeatures AffineFeatures::intercept(int block_size) {
  return AffineFeatures(std::vector<std::vector<int>>(block_size), 0);
}

AffineFeatures AffineFeatures::shared_source(int block_size, int source) {
  std::vector<std::vector<int>> sources(block_size, std::vector<int>{source});
  return AffineFeatures(std::move(sources), 1);
}

AffineFeatures AffineFeatures::with_sources(std::vector<std::vector<int>> sources) {
  if (sources.empty()) throw std::invalid_argument("AffineFeatures: empty block");
  const int n = static_cast<int>(sources.front().size());
  for (const auto& s : sources)
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("AffineFeatures: ragged source lists");
  return AffineFeatures(std::move(sources), n);
}

void AffineFeatures::eval(int local_i, const Vec& theta, Vec& x) const {
  x.resize(feature_dim());
  x[0] = 1.0;
  const auto& src = sources_[local_i];
  for (size_t j = 0; j < src.size(); ++j) x[1 + j] = theta[src[j]];
}

MetricModel::MetricModel(BlockStructure blocks, std::vector<BlockMetricSpec> specs)
    : blocks_(std::move(blocks)), specs_(std::move(specs)) {
  if (static_cast<int>(specs_.size()) != blocks_.num_blocks())
    throw std::invalid_argument("MetricModel: one spec per block required");
  for (int k = 0; k < blocks_.num_blocks(); ++k) {
    const auto& s = specs_[k];
    if (s.features1.block_size() != blocks_.block_size(k))
      throw std::invalid_argument("MetricModel: features1 size mismatch in block " +
                                  std::to_string(k));
    if (s.family == MassFamily::SumOfExponentials) {
      if (!s.features2 || s.features2->block_size() != blocks_.block_size(k))
        throw std::invalid_argument("MetricModel: sum family needs matching features2");
    } else if (s.features2) {
      throw std::invalid_argument("MetricModel: features2 given for exponential family");
    }
    // Masses of block k must condition only on other blocks.
    auto check_sources = [&](const AffineFeatures& f) {
      for (int i = 0; i < f.block_size(); ++i)
        for (int src : f.sources(i))
          if (blocks_.block_of(src) == k)
            throw std::invalid_argument("MetricModel: block " + std::to_string(k) +
                                        " features depend on its own coordinates");
    };
    check_sources(s.features1);
    if (s.features2) check_sources(*s.features2);
  }
}

bool MetricModel::block_position_dependent(int block) const {
  const auto& s = specs_[block];
  if (s.features1.feature_dim() > 1) return true;
  return s.features2 && s.features2->feature_dim() > 1;
}

bool MetricModel::position_dependent() const {
  for (int k = 0; k < num_blocks(); ++k)
    if (block_position_dependent(k)) return true;
  return false;
}

PhiParams MetricModel::zero_phi() const {
  PhiParams phi;
  for (int k = 0; k < num_blocks(); ++k) {
    const auto& s = specs_[k];
    phi.slot1.push_back(Mat::Zero(blocks_.block_size(k), s.features1.feature_dim()));
    phi.slot2.push_back(
        Mat::Zero(blocks_.block_size(k), s.features2 ? s.features2->feature_dim() : 0));
  }
  return phi;
}

void MetricModel::mass_diag(int block, const Vec& theta, const PhiParams& phi, Vec& mass,
                            Vec& log_mass) const {
  const auto& s = specs_[block];
  const int bs = blocks_.block_size(block);
  mass.resize(bs);
  log_mass.resize(bs);
  if (s.family == MassFamily::Exponential) {
    for (int i = 0; i < bs; ++i) {
      const double eta = clamp_eta(exponent(s.features1, phi.slot1[block], i, theta));
      log_mass[i] = eta;
      mass[i] = std::exp(eta);
    }
  } else {
    for (int i = 0; i < bs; ++i) {
      const double e1 = clamp_eta(exponent(s.features1, phi.slot1[block], i, theta));
      const double e2 = clamp_eta(exponent(*s.features2, phi.slot2[block], i, theta));
      const double hi = std::max(e1, e2), lo = std::min(e1, e2);
      log_mass[i] = hi + std::log1p(std::exp(lo - hi));
      mass[i] = std::exp(e1) + std::exp(e2);
    }
  }
}

std::vector<std::pair<int, double>> MetricModel::grad_log_mass_theta(
    int block, int local_i, const Vec& theta, const PhiParams& phi) const {
  const auto& s = specs_[block];
  std::vector<std::pair<int, double>> out;
  auto add_branch = [&](const AffineFeatures& f, const Mat& p, double weight) {
    const double eta = exponent(f, p, local_i, theta);
    if (!in_range(eta)) return;  // clamped branch: flat in theta
    const auto& src = f.sources(local_i);
    for (size_t j = 0; j < src.size(); ++j)
      out.emplace_back(src[j], weight * p(local_i, 1 + j));
  };
  if (s.family == MassFamily::Exponential) {
    add_branch(s.features1, phi.slot1[block], 1.0);
  } else {
    const double e1 = clamp_eta(exponent(s.features1, phi.slot1[block], local_i, theta));
    const double e2 = clamp_eta(exponent(*s.features2, phi.slot2[block], local_i, theta));
    const double hi = std::max(e1, e2);
    const double w1 = std::exp(e1 - hi), w2 = std::exp(e2 - hi);
    const double total = w1 + w2;
    add_branch(s.features1, phi.slot1[block], w1 / total);
    add_branch(*s.features2, phi.slot2[block], w2 / total);
  }
  return out;
}

void MetricModel::grad_log_mass_phi(int block, int local_i, const Vec& theta,
                                    const PhiParams& phi, Vec& slot1, Vec& slot2) const {
  const auto& s = specs_[block];
  if (s.family == MassFamily::Exponential) {
    const double eta = exponent(s.features1, phi.slot1[block], local_i, theta);
    s.features1.eval(local_i, theta, slot1);
    if (!in_range(eta)) slot1.setZero();
    slot2.resize(0);
    return;
  }
  const double e1 = exponent(s.features1, phi.slot1[block], local_i, theta);
  const double e2 = exponent((*s.features2), phi.slot2[block], local_i, theta);
  const double c1 = clamp_eta(e1), c2 = clamp_eta(e2);
  const double hi = std::max(c1, c2);
  const double w1 = std::exp(c1 - hi), w2 = std::exp(c2 - hi);
  const double total = w1 + w2;
  s.features1.eval(local_i, theta, slot1);
  s.features2->eval(local_i, theta, slot2);
  slot1 *= in_range(e1) ? w1 / total : 0.0;
  slot2 *= in_range(e2) ? w2 / total : 0.0;
}

void MetricModel::accumulate_weighted_grad_log_mass(int block, const Vec& theta,
                                                    const PhiParams& phi, const Vec& weights,
                                                    Vec& out) const {
  const auto& s = specs_[block];
  const int bs = blocks_.block_size(block);
  auto add_branch = [&](const AffineFeatures& f, const Mat& p, int i, double w) {
    if (w == 0.0) return;
    const auto& src = f.sources(i);
    for (size_t j = 0; j < src.size(); ++j) out[src[j]] += w * p(i, 1 + j);
  };
  if (s.family == MassFamily::Exponential) {
    if (s.features1.feature_dim() == 1) return;
    for (int i = 0; i < bs; ++i) {
      const double eta = exponent(s.features1, phi.slot1[block], i, theta);
      if (in_range(eta)) add_branch(s.features1, phi.slot1[block], i, weights[i]);
    }
  } else {
    if (s.features1.feature_dim() == 1 && s.features2->feature_dim() == 1) return;
    for (int i = 0; i < bs; ++i) {
      const double e1 = exponent(s.features1, phi.slot1[block], i, theta);
      const double e2 = exponent(*s.features2, phi.slot2[block], i, theta);
      const double c1 = clamp_eta(e1), c2 = clamp_eta(e2);
      const double hi = std::max(c1, c2);
      const double w1 = std::exp(c1 - hi), w2 = std::exp(c2 - hi);
      const double total = w1 + w2;
      if (in_range(e1)) add_branch(s.features1, phi.slot1[block], i, weights[i] * w1 / total);
      if (in_range(e2)) add_branch(*s.features2, phi.slot2[block], i, weights[i] * w2 / total);
    }
  }
}

PhiParams MetricModel::read_phi_csv(std::istream& is) const {
  PhiParams phi = zero_phi();
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("phi csv: empty input");
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    long vals[4];
    for (int f = 0; f < 4; ++f) {
      if (!std::getline(row, field, ','))
        throw std::runtime_error("phi csv: short row on line " + std::to_string(line_no));
      vals[f] = std::stol(field);
    }
    if (!std::getline(row, field, ','))
      throw std::runtime_error("phi csv: missing value on line " + std::to_string(line_no));
    const long block = vals[0], coord = vals[1], slot = vals[2], comp = vals[3];
    if (block < 0 || block >= num_blocks())
      throw std::runtime_error("phi csv: bad block on line " + std::to_string(line_no));
    Mat& target = (slot == 1) ? phi.slot1[block] : phi.slot2[block];
    if (slot < 1 || slot > 2 || coord < 0 || coord >= target.rows() || comp < 0 ||
        comp >= target.cols())
      throw std::runtime_error("phi csv: bad index on line " + std::to_string(line_no));
    target(coord, comp) = std::stod(field);
  }
  return phi;
}

void PhiParams::write_csv(std::ostream& os) const {
  os << "block,coordinate,slot,component,value\n";
  for (size_t k = 0; k < slot1.size(); ++k) {
    for (Eigen::Index i = 0; i < slot1[k].rows(); ++i)
      for (Eigen::Index c = 0; c < slot1[k].cols(); ++c)
        os << k << "," << i << ",1," << c << "," << slot1[k](i, c) << "\n";
    for (Eigen::Index i = 0; i < slot2[k].rows(); ++i)
      for (Eigen::Index c = 0; c < slot2[k].cols(); ++c)
        os << k << "," << i << ",2," << c << "," << slot2[k](i, c) << "\n";
  }
}

MassState evaluate_masses(const MetricModel& metric, const Vec& theta, const PhiParams& phi) {
  MassState state;
  state.mass.resize(metric.dim());
  state.log_mass.resize(metric.dim());
  Vec m, lm;
  for (int k = 0; k < metric.num_blocks(); ++k) {
    metric.mass_diag(k, theta, phi, m, lm);
    const auto& idx = metric.structure().block(k);
    for (size_t i = 0; i < idx.size(); ++i) {
      state.mass[idx[i]] = m[i];
      state.log_mass[idx[i]] = lm[i];
    }
  }
  return state;
}

Vec sample_momentum(const MassState& masses, Rng& rng) {
  Vec p(masses.mass.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p[i] = std::sqrt(masses.mass[i]) * rng.normal();
  return p;
}

}  // namespace hrmc
