#include "qc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qc {

namespace {

std::vector<Atom> canonical_atoms(std::vector<Atom> atoms, double length) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.pos) || !std::isfinite(a.weight))
      throw Error("atom data must be finite");
    if (a.pos < 0.0 || a.pos > length)
      throw Error("atom position " + std::to_string(a.pos) + " outside [0, length]");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& x, const Atom& y) { return x.pos < y.pos; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!out.empty() && out.back().pos == a.pos)
      out.back().weight += a.weight;
    else
      out.push_back(a);
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == 0.0; });
  return out;
}

std::vector<Step> canonical_steps(std::vector<Step> steps, double length) {
  if (steps.empty()) return {Step{0.0, length, 0.0}};
  if (steps.front().left != 0.0) throw Error("first step must start at 0");
  if (steps.back().right != length) throw Error("last step must end at the piece length");
  std::vector<Step> out;
  out.reserve(steps.size());
  double prev_right = 0.0;
  for (const auto& s : steps) {
    if (!std::isfinite(s.value)) throw Error("step value must be finite");
    if (s.left != prev_right) throw Error("steps must partition [0, length] without gaps");
    if (s.right < s.left) throw Error("step breakpoints must be increasing");
    prev_right = s.right;
    if (s.right == s.left) continue;
    if (!out.empty() && out.back().value == s.value)
      out.back().right = s.right;
    else
      out.push_back(s);
  }
  if (out.empty()) throw Error("steps must cover a set of positive length");
  return out;
}

// Cumulative |density| mass on (-inf, x].
class DensityMass {
 public:
  explicit DensityMass(std::span<const Step> steps) : steps_(steps) {
    cumulative_.reserve(steps.size() + 1);
    cumulative_.push_back(0.0);
    for (const auto& s : steps)
      cumulative_.push_back(cumulative_.back() + std::abs(s.value) * (s.right - s.left));
  }

  double operator()(double x) const {
    if (x <= steps_.front().left) return 0.0;
    if (x >= steps_.back().right) return cumulative_.back();
    auto it = std::upper_bound(steps_.begin(), steps_.end(), x,
                               [](double v, const Step& s) { return v < s.right; });
    const auto i = static_cast<std::size_t>(it - steps_.begin());
    return cumulative_[i] + std::abs(steps_[i].value) * (x - steps_[i].left);
  }

 private:
  std::span<const Step> steps_;
  std::vector<double> cumulative_;
};

}  // namespace

Piece::Piece(double length) : Piece(length, {}, {}) {}

Piece::Piece(double length, std::vector<Atom> atoms, std::vector<Step> steps) : length_(length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw Error("piece length must be positive");
  atoms_ = canonical_atoms(std::move(atoms), length);
  steps_ = canonical_steps(std::move(steps), length);
}

Piece Piece::atom(double length, double pos, double weight) {
  return Piece(length, {Atom{pos, weight}});
}

Piece Piece::constant(double length, double value) {
  return Piece(length, {}, {Step{0.0, length, value}});
}

double Piece::density_at(double x) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), x,
                             [](double v, const Step& s) { return v < s.right; });
  if (it == steps_.end()) return steps_.back().value;
  return it->value;
}

TotalVariation::TotalVariation(Piece p) : piece_(std::move(p)) {
  for (const auto& a : piece_.atoms())
    if (a.weight < 0.0) throw Error("total variation must have nonnegative atoms");
  for (const auto& s : piece_.steps())
    if (s.value < 0.0) throw Error("total variation must have nonnegative density");
}

Piece concatenate(std::span<const Piece> pieces) {
  if (pieces.empty()) throw Error("empty concatenation");
  std::vector<Atom> atoms;
  std::vector<Step> steps;
  double offset = 0.0;
  for (const auto& p : pieces) {
    for (const auto& a : p.atoms()) atoms.push_back({a.pos + offset, a.weight});
    for (const auto& s : p.steps()) steps.push_back({s.left + offset, s.right + offset, s.value});
    offset += p.length();
  }
  return Piece(offset, std::move(atoms), std::move(steps));
}

Piece concatenate(std::initializer_list<Piece> pieces) {
  return concatenate(std::span<const Piece>(pieces.begin(), pieces.size()));
}

TotalVariation total_variation(const Piece& p) {
  std::vector<Atom> atoms;
  std::vector<Step> steps;
  for (const auto& a : p.atoms()) atoms.push_back({a.pos, std::abs(a.weight)});
  for (const auto& s : p.steps()) steps.push_back({s.left, s.right, std::abs(s.value)});
  return TotalVariation(Piece(p.length(), std::move(atoms), std::move(steps)));
}

TotalVariation total_variation(const TotalVariation& tv) { return tv; }

double norm_lu(const Piece& p) {
  // The unit-window mass a -> |p|((a, a+1]) is a step function (atoms) plus a
  // continuous piecewise-linear function (density). Both only change shape at
  // the candidates below, so the sup is attained in the limit at one of them.
  const auto atoms = p.atoms();
  const auto steps = p.steps();
  const DensityMass mass(steps);

  std::vector<double> at, at_minus_one, prefix{0.0};
  for (const auto& a : atoms) {
    at.push_back(a.pos);
    at_minus_one.push_back(a.pos - 1.0);
    prefix.push_back(prefix.back() + std::abs(a.weight));
  }
  // An atom at x lies in (a, a+1] iff x - 1 <= a < x.
  auto atom_mass = [&](double a) {
    const auto entered = std::upper_bound(at_minus_one.begin(), at_minus_one.end(), a) - at_minus_one.begin();
    const auto left = std::upper_bound(at.begin(), at.end(), a) - at.begin();
    return prefix[static_cast<std::size_t>(entered)] - prefix[static_cast<std::size_t>(left)];
  };
  auto density_mass = [&](double a) { return mass(a + 1.0) - mass(a); };

  std::vector<double> candidates;
  for (double x : at) {
    candidates.push_back(x);
    candidates.push_back(x - 1.0);
  }
  for (const auto& s : steps) {
    candidates.push_back(s.left);
    candidates.push_back(s.left - 1.0);
  }
  candidates.push_back(p.length());
  candidates.push_back(p.length() - 1.0);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  double best = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double dens = density_mass(candidates[i]);
    if (i + 1 < candidates.size()) dens = std::max(dens, density_mass(candidates[i + 1]));
    best = std::max(best, atom_mass(candidates[i]) + dens);
  }
  return best;
}

double norm_lu(const TotalVariation& tv) { return norm_lu(tv.piece()); }

Piece restrict(const Piece& p, double a, double b, Boundary boundary) {
  if (!(a < b)) throw Error("empty interval");
  if (a < 0.0 || b > p.length()) throw Error("restriction window outside the piece");
  std::vector<Atom> atoms;
  for (const auto& at : p.atoms()) {
    const bool inside = boundary == Boundary::kLeftOpen ? (at.pos > a && at.pos <= b)
                                                        : (at.pos >= a && at.pos < b);
    if (inside) atoms.push_back({at.pos - a, at.weight});
  }
  std::vector<Step> steps;
  for (const auto& s : p.steps()) {
    if (s.right <= a || s.left >= b) continue;
    steps.push_back({std::max(s.left, a) - a, std::min(s.right, b) - a, s.value});
  }
  const double length = b - a;
  steps.back().right = length;
  return Piece(length, std::move(atoms), std::move(steps));
}

Piece translate(const Piece& p, double t) {
  if (t < 0.0) throw Error("translation must be nonnegative");
  if (t == 0.0) return p;
  return concatenate({Piece(t), p});
}

Piece reflect(const Piece& p) {
  const double length = p.length();
  std::vector<Atom> atoms;
  for (const auto& a : p.atoms()) atoms.push_back({length - a.pos, a.weight});
  std::vector<Step> steps;
  const auto src = p.steps();
  for (auto it = src.rbegin(); it != src.rend(); ++it)
    steps.push_back({length - it->right, length - it->left, it->value});
  steps.front().left = 0.0;
  steps.back().right = length;
  return Piece(length, std::move(atoms), std::move(steps));
}

bool piece_equal(const Piece& p, const Piece& q, double tol) {
  if (std::abs(p.length() - q.length()) > tol) return false;

  std::vector<Atom> pa, qa;
  std::copy_if(p.atoms().begin(), p.atoms().end(), std::back_inserter(pa),
               [tol](const Atom& a) { return std::abs(a.weight) > tol; });
  std::copy_if(q.atoms().begin(), q.atoms().end(), std::back_inserter(qa),
               [tol](const Atom& a) { return std::abs(a.weight) > tol; });
  if (pa.size() != qa.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (std::abs(pa[i].pos - qa[i].pos) > tol) return false;
    if (std::abs(pa[i].weight - qa[i].weight) > tol) return false;
  }

  // Compare densities on the common refinement; cells no wider than tol only
  // come from breakpoints that already agree within tol.
  const double length = std::min(p.length(), q.length());
  std::vector<double> cuts{0.0, length};
  for (const auto& s : p.steps())
    if (s.left < length) cuts.push_back(s.left);
  for (const auto& s : q.steps())
    if (s.left < length) cuts.push_back(s.left);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double width = cuts[i + 1] - cuts[i];
    if (width <= tol && tol > 0.0) continue;
    const double mid = cuts[i] + 0.5 * width;
    if (std::abs(p.density_at(mid) - q.density_at(mid)) > tol) return false;
  }
  return true;
}

void to_json(nlohmann::json& j, const Piece& p) {
  auto atoms = nlohmann::json::array();
  for (const auto& a : p.atoms()) atoms.push_back({a.pos, a.weight});
  auto steps = nlohmann::json::array();
  for (const auto& s : p.steps()) steps.push_back({s.left, s.right, s.value});
  j = nlohmann::json{{"length", p.length()}, {"atoms", atoms}, {"steps", steps}};
}

Piece piece_from_json(const nlohmann::json& j) {
  try {
    const double length = j.at("length").get<double>();
    std::vector<Atom> atoms;
    if (j.contains("atoms"))
      for (const auto& a : j.at("atoms")) {
        if (!a.is_array() || a.size() != 2) throw Error("atom must be [pos, weight]");
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
      }
    std::vector<Step> steps;
    if (j.contains("steps"))
      for (const auto& s : j.at("steps")) {
        if (!s.is_array() || s.size() != 3) throw Error("step must be [left, right, value]");
        steps.push_back({s[0].get<double>(), s[1].get<double>(), s[2].get<double>()});
      }
    return Piece(length, std::move(atoms), std::move(steps));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed piece: ") + e.what());
  }
}

}  // namespace qc
