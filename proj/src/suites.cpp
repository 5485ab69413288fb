#include "fermifuse/suites.hpp"

#include "fermifuse/fibre_fusion.hpp"
#include "fermifuse/implementer_fusion.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <thread>

namespace fermifuse {

namespace {

using nlohmann::ordered_json;

void push(TrialResult& t, const std::string& name, double value, double threshold) {
  t.residuals.emplace_back(name, value);
  t.thresholds.emplace_back(name, threshold);
}

void finish(TrialResult& t) {
  t.pass = true;
  for (std::size_t i = 0; i < t.residuals.size(); ++i)
    if (!(t.residuals[i].second <= t.thresholds[i].second)) t.pass = false;
}

int thread_budget(int trials) {
  const char* env = std::getenv("FERMIFUSE_THREADS");
  int cap = env ? std::atoi(env) : 1;
  if (cap <= 0) cap = 1;
  const int hw = int(std::thread::hardware_concurrency());
  return std::min({std::max(cap, 1), std::max(hw, 1), std::max(trials, 1)});
}

/// Runs fn(i) for i in [0, count) on a small worker pool; results are
/// collected in index order so reports stay deterministic.
std::vector<TrialResult> run_trials(int count, const std::function<TrialResult(int)>& fn) {
  std::vector<TrialResult> out;
  out.resize(std::size_t(count));
  const int threads = thread_budget(count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) out[std::size_t(i)] = fn(i);
    return out;
  }
  std::vector<std::future<void>> jobs;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        out[std::size_t(i)] = fn(i);
      }
    }));
  for (auto& j : jobs) j.get();
  return out;
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t seed, int count) {
  Rng master(seed);
  std::vector<std::uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(master.next_seed());
  return out;
}

// ---------------------------------------------------------------------------
// car

SuiteReport suite_car(int n, std::uint64_t seed, double /*tol*/, int trials) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  const auto seeds = trial_seeds(seed, trials);
  rep.trials = run_trials(trials, [&](int i) {
    TrialResult t;
    t.seed = seeds[std::size_t(i)];
    Rng rng(t.seed);
    const Vec f = rng.gaussian_vector(2 * n);
    const Vec h = rng.gaussian_vector(2 * n);
    const Mat rf = rho(fock, f).op;
    const Mat rh = rho(fock, h).op;
    // <f, alpha h> with the inner product linear in the first argument.
    const Cplx form = Vec(fock.model.alpha.apply(h)).dot(f);
    const Mat car = rf * rh + rh * rf - 2.0 * form * Mat::Identity(fock.dim, fock.dim);
    push(t, "car_anticommutator", car.norm() / (1.0 + f.norm() * h.norm()), 1e-10);
    push(t, "car_adjoint", (rf.adjoint() - rho(fock, Vec(fock.model.alpha.apply(f))).op).norm() /
                               (1.0 + f.norm()),
         1e-10);
    finish(t);
    return t;
  });
  return rep;
}

// ---------------------------------------------------------------------------
// irreducible

SuiteReport suite_irreducible(int n, std::uint64_t seed, double /*tol*/, int /*trials*/) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  TrialResult t;
  t.seed = seed;
  std::vector<Mat> gens;
  for (int j = 0; j < 2 * n; ++j) gens.push_back(fock.gamma(j));
  const auto space = intertwiner_space(gens, gens);
  push(t, "self_intertwiner_dim_minus_one", std::abs(double(space.size()) - 1.0), 0.5);
  finish(t);
  rep.trials.push_back(t);
  return rep;
}

// ---------------------------------------------------------------------------
// implementer

SuiteReport suite_implementer(int n, std::uint64_t seed, double /*tol*/, int trials) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  const auto seeds = trial_seeds(seed, trials);
  rep.trials = run_trials(trials, [&](int i) {
    TrialResult t;
    t.seed = seeds[std::size_t(i)];
    const OrthogonalElement g = random_theta_orthogonal(fock.model, t.seed);
    const OrthogonalElement h = random_theta_orthogonal(fock.model, t.seed + 1);
    const Implementer ug = implement(fock, g);
    const Implementer uh = implement(fock, h);
    const Implementer ugh = implement(fock, OrthogonalElement{g.g * h.g});
    push(t, "implementation_residual", implementation_residual(fock, ug.u, g.g), 1e-9);
    const Cplx scalar = hs_inner(ugh.u, ug.u * uh.u) / double(fock.dim);
    push(t, "projectivity_unimodular", std::abs(std::abs(scalar) - 1.0), 1e-9);
    push(t, "projectivity_residual", (ug.u * uh.u - scalar * ugh.u).norm(), 1e-9);
    push(t, "unitarity", (ug.u * ug.u.adjoint() - Mat::Identity(fock.dim, fock.dim)).norm(),
         1e-10);
    finish(t);
    return t;
  });
  return rep;
}

// ---------------------------------------------------------------------------
// modular

SuiteReport suite_modular(int n, std::uint64_t seed, double /*tol*/, int /*trials*/) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  TrialResult t;
  t.seed = seed;
  std::vector<Mat> gens;
  for (int j = 0; j < n; ++j) gens.push_back(fock.gamma(j));
  const VNAlgebra nm = algebra_from_generators(fock.dim, gens);
  const TomitaData td = tomita(nm, fock.vacuum());
  const AntiUnitaryOp j_formula = modular_j(fock);
  push(t, "tomita_vs_klein_lambda", (td.j.linear_part - j_formula.linear_part).norm(), 1e-8);
  push(t, "j_squared", td.j.involution_defect(), 1e-9);
  // S = J Delta^{1/2}: antiunitary times the positive polar factor.
  const Mat s_rebuilt = td.j.linear_part * td.delta_half.conjugate();
  push(t, "polar_reconstruction", (s_rebuilt - td.s.linear_part).norm(), 1e-9);
  {
    HermEig de = hermitian_eig(td.delta_half, 1e-6);
    push(t, "delta_positive", std::max(0.0, -de.values(0)), 1e-9);
  }
  push(t, "cyclic_margin_shortfall", std::max(0.0, 1e-8 - td.cyclic_margin), 0.0);
  finish(t);
  rep.trials.push_back(t);
  return rep;
}

// ---------------------------------------------------------------------------
// standardform

SuiteReport suite_standardform(int n, std::uint64_t seed, double /*tol*/, int /*trials*/) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  TrialResult t;
  t.seed = seed;
  std::vector<Mat> gens;
  for (int j = 0; j < n; ++j) gens.push_back(fock.gamma(j));
  const VNAlgebra nm = algebra_from_generators(fock.dim, gens);
  const StandardFormData sf = standard_form(nm, fock.vacuum(), seed);
  const StandardFormCheck chk = verify_standard_form(sf);
  push(t, "j_involution", chk.j_involution, 1e-8);
  push(t, "jaj_equals_commutant", chk.jaj_commutant, 1e-7);
  push(t, "center_conjugation", chk.center_conj, 1e-8);
  push(t, "cone_j_fixed", chk.cone_fixed, 1e-8);
  push(t, "cone_psd_defect", std::max(0.0, -chk.cone_psd_floor), 1e-9);
  push(t, "cyclic_margin_shortfall", std::max(0.0, 1e-8 - chk.cyclic_margin), 0.0);
  finish(t);
  rep.trials.push_back(t);
  return rep;
}

// ---------------------------------------------------------------------------
// fusion-coherence

double pentagon_residual(const Bimodule& x, const GnsSpace& l2) {
  const FusedSpace s1 = fuse(x, x, l2);
  const FusedSpace s2 = fuse(s1.bimodule, x, l2);
  const FusedSpace s3 = fuse(x, s1.bimodule, l2);
  const Mat alpha_xxx = associator(s1, s2, s1, s3);

  const FusedSpace a = fuse(s2.bimodule, x, l2);
  const FusedSpace b = fuse(s1.bimodule, s1.bimodule, l2);
  const FusedSpace c = fuse(x, s3.bimodule, l2);
  const FusedSpace d = fuse(s3.bimodule, x, l2);
  const FusedSpace e = fuse(x, s2.bimodule, l2);

  const Mat a1 = associator(s2, a, s1, b);
  const Mat a2 = associator(s1, b, s3, c);
  const Mat a3 = fuse_maps_simple(a, d, alpha_xxx, Mat::Identity(x.dim, x.dim));
  const Mat a4 = associator(s3, d, s2, e);
  const Mat a5 = fuse_maps_simple(e, c, Mat::Identity(x.dim, x.dim), alpha_xxx);
  return (a2 * a1 - a5 * a4 * a3).norm();
}

SuiteReport suite_fusion_coherence(int n, std::uint64_t seed, double /*tol*/, int /*trials*/) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  const FusionContext ctx = make_fusion_context(fock);
  const Bimodule l2bim = standard_bimodule(ctx.l2);

  TrialResult t;
  t.seed = seed;

  // lambda = rho on the standard bimodule.
  const FusedSpace l2l2 = fuse(l2bim, l2bim, ctx.l2);
  push(t, "lambda_equals_rho", (left_unitor(l2l2) - right_unitor(l2l2)).norm(), 1e-8);
  push(t, "unitor_unitarity",
       (left_unitor(l2l2) * left_unitor(l2l2).adjoint() -
        Mat::Identity(ctx.l2.dim, ctx.l2.dim))
           .norm(),
       1e-8);

  // Triangle on (F, L^2, F).
  {
    const FusedSpace fl2 = fuse(ctx.fock_bimodule, l2bim, ctx.l2);
    const FusedSpace t1 = fuse(fl2.bimodule, ctx.fock_bimodule, ctx.l2);
    const FusedSpace l2f = fuse(l2bim, ctx.fock_bimodule, ctx.l2);
    const FusedSpace t2 = fuse(ctx.fock_bimodule, l2f.bimodule, ctx.l2);
    const Mat alpha_t = associator(fl2, t1, l2f, t2);
    const Mat eye_f = Mat::Identity(fock.dim, fock.dim);
    const Mat lhs = fuse_maps_simple(t1, ctx.ff, right_unitor(fl2), eye_f);
    const Mat rhs = fuse_maps_simple(t2, ctx.ff, eye_f, left_unitor(l2f)) * alpha_t;
    push(t, "triangle", (lhs - rhs).norm(), 1e-8);
  }

  push(t, "pentagon_l2", pentagon_residual(l2bim, ctx.l2), 1e-8);
  push(t, "pentagon_fock", pentagon_residual(ctx.fock_bimodule, ctx.l2), 1e-8);

  // chi = standard unitors coincide on F and are unitary.
  push(t, "chi_left_right",
       (standard_left_unitor(ctx.ff, ctx.u_std) - standard_right_unitor(ctx.ff, ctx.u_std)).norm(),
       1e-8);
  push(t, "chi_unitarity",
       (ctx.chi.adjoint() * ctx.chi - Mat::Identity(ctx.ff.model_dim, ctx.ff.model_dim)).norm(),
       1e-8);

  // State independence: comparison unitaries compose coherently.
  {
    Rng rng(seed + 17);
    auto random_state = [&]() {
      Mat a = Mat::Zero(fock.dim, fock.dim);
      for (int i = 0; i < ctx.n_minus.dim_span(); ++i)
        a += Cplx(rng.gaussian(), rng.gaussian()) * ctx.n_minus.span_basis[std::size_t(i)];
      Mat d = a * a.adjoint() + 0.2 * Mat::Identity(fock.dim, fock.dim);
      d /= d.trace().real();
      return State::from_density(d);
    };
    const GnsSpace l2a = gns(ctx.n_minus, random_state());
    const GnsSpace l2b = gns(ctx.n_minus, random_state());
    const FusedSpace ffa = fuse(ctx.fock_bimodule, ctx.fock_bimodule, l2a);
    const FusedSpace ffb = fuse(ctx.fock_bimodule, ctx.fock_bimodule, l2b);
    const Mat eye_f = Mat::Identity(fock.dim, fock.dim);
    const StarIso idn = StarIso::identity(ctx.n_minus);
    const Mat c0a = fuse_maps(ctx.ff, ffa, eye_f, idn, eye_f);
    const Mat cab = fuse_maps(ffa, ffb, eye_f, idn, eye_f);
    const Mat c0b = fuse_maps(ctx.ff, ffb, eye_f, idn, eye_f);
    push(t, "state_coherence", (c0b - cab * c0a).norm(), 1e-8);
    push(t, "state_comparison_unitarity",
         (c0a.adjoint() * c0a - Mat::Identity(ffa.model_dim, ffa.model_dim)).norm(), 1e-8);
  }

  finish(t);
  rep.trials.push_back(t);
  return rep;
}

// ---------------------------------------------------------------------------
// mu-hat

SuiteReport suite_mu_hat(int n, std::uint64_t seed, double /*tol*/, int trials) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  const FusionContext ctx = make_fusion_context(fock);
  const auto seeds = trial_seeds(seed, trials);
  rep.trials = run_trials(trials, [&](int i) {
    TrialResult t;
    t.seed = seeds[std::size_t(i)];
    Rng rng(t.seed);
    const FermionModel& model = fock.model;
    const int nm = model.n_modes;
    auto so = [&]() { return Mat(rng.special_orthogonal(nm).cast<Cplx>()); };
    // Fusable pairs (U, U') and (W, W').
    const Mat gm = so(), gp = so(), gpp = so();
    const Mat hm = so(), hp = so(), hpp = so();
    const Implementer u = implement(fock, OrthogonalElement{model.assemble_theta(gm, gp)});
    const Implementer up = implement(
        fock, OrthogonalElement{model.assemble_theta(model.reflect_block(gp), gpp)});
    const Implementer w = implement(fock, OrthogonalElement{model.assemble_theta(hm, hp)});
    const Implementer wp = implement(
        fock, OrthogonalElement{model.assemble_theta(model.reflect_block(hp), hpp)});

    const Implementer f1 = mu_hat(ctx, u, up);
    push(t, "mu_hat_implements", implementation_residual(fock, f1.u, f1.g.g), 1e-8);
    push(t, "mu_hat_unitarity",
         (f1.u * f1.u.adjoint() - Mat::Identity(fock.dim, fock.dim)).norm(), 1e-8);

    const Implementer f2 = mu_hat(ctx, w, wp);
    const Implementer uw = Implementer{u.u * w.u, OrthogonalElement{u.g.g * w.g.g}, Parity::even};
    const Implementer upwp =
        Implementer{up.u * wp.u, OrthogonalElement{up.g.g * wp.g.g}, Parity::even};
    const Implementer f12 = mu_hat(ctx, uw, upwp);
    push(t, "mu_hat_multiplicative", (f1.u * f2.u - f12.u).norm(), 1e-8);

    // Phase bilinearity over U(1).
    const Cplx z = std::polar(1.0, 0.7), wph = std::polar(1.0, -1.3);
    const Implementer uz = Implementer{z * u.u, u.g, Parity::even};
    const Implementer upw = Implementer{wph * up.u, up.g, Parity::even};
    push(t, "mu_hat_phase_bilinear", (mu_hat(ctx, uz, upw).u - z * wph * f1.u).norm(), 1e-9);
    finish(t);
    return t;
  });
  return rep;
}

// ---------------------------------------------------------------------------
// theorem-agree

SuiteReport suite_theorem_agree(int n, std::uint64_t seed, double /*tol*/, int trials) {
  SuiteReport rep;
  // Orientation calibration at N = 2 by brute force over both formulas.
  const FusionContext ctx2 = make_fusion_context(make_fock(build_model(2)));
  const Orientation orientation = calibrate_orientation(ctx2);

  const FockSpace fock = make_fock(build_model(n));
  const FusionContext ctx = make_fusion_context(fock);
  const auto seeds = trial_seeds(seed, trials);
  rep.trials = run_trials(trials, [&](int i) {
    TrialResult t;
    t.seed = seeds[std::size_t(i)];
    Rng rng(t.seed);
    const FermionModel& model = fock.model;
    const int nm = model.n_modes;
    auto so = [&]() { return Mat(rng.special_orthogonal(nm).cast<Cplx>()); };
    const Mat gm = so(), gp = so(), gpp = so();
    const Implementer u = implement(fock, OrthogonalElement{model.assemble_theta(gm, gp)});
    const Implementer up = implement(
        fock, OrthogonalElement{model.assemble_theta(model.reflect_block(gp), gpp)});
    const TheoremAgreeReport r = theorem_fusion_products_agree(ctx, u, up, orientation);
    push(t, "theorem_delta", r.delta, 1e-7);
    push(t, "k_commutes_with_j", r.j_commutation, 1e-8);
    push(t, "uk_block_form", r.block_residual, 1e-8);
    push(t, "mu_hat_k_idempotent", r.idempotent_residual, 1e-8);
    push(t, "calibration_is_inverse", orientation == Orientation::inverse ? 0.0 : 1.0, 0.5);
    finish(t);
    return t;
  });
  return rep;
}

// ---------------------------------------------------------------------------
// fibre

SuiteReport suite_fibre(int n, std::uint64_t seed, double /*tol*/, int trials) {
  SuiteReport rep;
  const FockSpace fock = make_fock(build_model(n));
  const FusionContext ctx = make_fusion_context(fock);
  const FermionModel& model = fock.model;
  const int nm = model.n_modes;
  const auto seeds = trial_seeds(seed, trials);

  rep.trials = run_trials(trials, [&](int i) {
    TrialResult t;
    t.seed = seeds[std::size_t(i)];
    Rng rng(t.seed);
    auto so = [&]() { return Mat(rng.special_orthogonal(nm).cast<Cplx>()); };

    const FibreTriple triple = make_triple(ctx, so(), so(), so());

    // Random fusable reframing.
    const Mat am = so(), ap = so(), app = so();
    const Implementer u12 = implement(fock, OrthogonalElement{model.assemble_theta(am, ap)});
    const Implementer u23 = implement(
        fock, OrthogonalElement{model.assemble_theta(model.reflect_block(ap), app)});
    const FibreTriple moved = reframe(ctx, triple, u12, u23);
    const FrameIndependenceReport fr = frame_independence(ctx, triple, moved);
    push(t, "frame_independence", fr.difference, 1e-7);

    // Phase reframing z12 z23 = z13 leaves chi untouched.
    const Cplx z12 = std::polar(1.0, 0.9), z23 = std::polar(1.0, -0.4);
    FibreTriple phased = triple;
    phased.f12.lift.u *= z12;
    phased.f23.lift.u *= z23;
    phased.f13.lift.u *= z12 * z23;
    push(t, "phase_reframing", frame_independence(ctx, triple, phased).difference, 1e-8);

    // Negative control: breaking the 13-compatibility must be detected.
    FibreTriple broken = triple;
    broken.f13.lift.u *= std::polar(1.0, 0.25);
    bool detected = false;
    try {
      (void)fibre_chi(ctx, broken);
    } catch (const Error& e) {
      detected = e.code() == "IncompatibleTriple";
    }
    push(t, "negative_control_detected", detected ? 0.0 : 1.0, 0.5);

    if (i == 0) {
      // Identity frames give chi itself.
      const Mat eye = Mat::Identity(nm, nm);
      const FibreTriple idt = make_triple(ctx, eye, eye, eye);
      push(t, "identity_frames_give_chi", (fibre_chi(ctx, idt) - ctx.chi).norm(), 1e-8);
    }

    const FibreAssociativityReport ar = fibre_associativity(ctx, so(), so(), so(), so());
    push(t, "fibre_associativity", ar.square_residual, 1e-7);
    push(t, "frame_consistency", ar.frame_consistency, 1e-6);
    finish(t);
    return t;
  });

  if (n == 2) {
    // Exhaustive small sweep over a 3 x 3 x 3 grid of rotation angles.
    const double angles[3] = {0.5, 1.5, 2.5};
    Mat p4 = Mat::Identity(nm, nm);
    p4(0, 0) = std::cos(1.1);
    p4(0, 1) = std::sin(1.1);
    p4(1, 0) = -std::sin(1.1);
    p4(1, 1) = std::cos(1.1);
    for (double a : angles)
      for (double b : angles)
        for (double c : angles) {
          TrialResult t;
          t.seed = std::uint64_t(a * 100) * 10000 + std::uint64_t(b * 100) * 100 +
                   std::uint64_t(c * 100);
          auto rot = [&](double ang) {
            Mat r = Mat::Identity(nm, nm);
            r(0, 0) = std::cos(ang);
            r(0, 1) = std::sin(ang);
            r(1, 0) = -std::sin(ang);
            r(1, 1) = std::cos(ang);
            return r;
          };
          const FibreAssociativityReport ar =
              fibre_associativity(ctx, rot(a), rot(b), rot(c), p4);
          push(t, "grid_associativity", ar.square_residual, 1e-7);
          finish(t);
          rep.trials.push_back(t);
        }
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "car",    "irreducible",      "implementer", "modular",       "standardform",
      "fusion-coherence", "mu-hat", "theorem-agree", "fibre"};
  return names;
}

bool is_suite_name(const std::string& name) {
  if (name == "all") return true;
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

SuiteReport run_suite(const std::string& name, int n, std::uint64_t seed, double tol,
                      int trials, bool timings) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  if (name == "car")
    rep = suite_car(n, seed, tol, trials);
  else if (name == "irreducible")
    rep = suite_irreducible(n, seed, tol, trials);
  else if (name == "implementer")
    rep = suite_implementer(n, seed, tol, trials);
  else if (name == "modular")
    rep = suite_modular(n, seed, tol, trials);
  else if (name == "standardform")
    rep = suite_standardform(n, seed, tol, trials);
  else if (name == "fusion-coherence")
    rep = suite_fusion_coherence(n, seed, tol, trials);
  else if (name == "mu-hat")
    rep = suite_mu_hat(n, seed, tol, trials);
  else if (name == "theorem-agree")
    rep = suite_theorem_agree(n, seed, tol, trials);
  else if (name == "fibre")
    rep = suite_fibre(n, seed, tol, trials);
  else
    fail("UnknownSuite", "no suite named '" + name + "'");

  rep.suite = name;
  rep.n = n;
  rep.seed = seed;
  rep.tol = tol;
  rep.passed = rep.failed = 0;
  rep.max_residual = 0.0;
  for (const TrialResult& t : rep.trials) {
    (t.pass ? rep.passed : rep.failed) += 1;
    for (const auto& [k, v] : t.residuals) rep.max_residual = std::max(rep.max_residual, v);
  }
  if (timings)
    rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return rep;
}

namespace {

ordered_json report_json(const SuiteReport& rep) {
  ordered_json j;
  j["suite"] = rep.suite;
  j["model"] = {{"n", rep.n}, {"seed", rep.seed}, {"tol", rep.tol}};
  j["trials"] = ordered_json::array();
  for (const TrialResult& t : rep.trials) {
    ordered_json tj;
    tj["seed"] = t.seed;
    ordered_json res;
    for (const auto& [k, v] : t.residuals) res[k] = v;
    tj["residuals"] = res;
    tj["pass"] = t.pass;
    j["trials"].push_back(tj);
  }
  j["summary"] = {{"passed", rep.passed},
                  {"failed", rep.failed},
                  {"max_residual", rep.max_residual},
                  {"wall_time_ms", rep.wall_time_ms}};
  return j;
}

}  // namespace

std::string report_to_json(const SuiteReport& report) { return report_json(report).dump(2) + "\n"; }

std::string reports_to_json(const std::vector<SuiteReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

}  // namespace fermifuse
