// Command-line front end: every library operation over a JSON protocol.
// Exit codes: 0 success, 1 input/validation error, 2 numeric failure,
// 3 negative verdict from a certifying subcommand.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <qrat/json_io.hpp>
#include <qrat/qrat.hpp>

namespace {

using qrat::CMat;
using qrat::Cplx;
using qrat::CVec;
using qrat::Json;

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kNumeric = 2;
constexpr int kNegative = 3;

struct Io {
  std::string input = "-";
  std::string output = "-";
};

Json read_input(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

void write_output(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("missing input field \"") + key +
                                "\"");
  return j[key];
}

long int_field(const Json& j, const char* key, long lo, long hi) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an integer");
  const long n = v.get<long>();
  if (n < lo || n > hi)
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" out of range");
  return n;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const Io& io, const std::optional<double>& qflag) {
  const Json in = read_input(io.input);
  const qrat::StateSpace ss =
      qrat::statespace_from_json(field(in, "realization"), "realization");
  const auto pts = qrat::points_from_json(field(in, "points"), "points");
  std::optional<double> q = qflag;
  if (!q && in.contains("q")) q = qrat::q_from_json(in["q"], "q");

  Json values = Json::array();
  if (q) {
    const qrat::QRational f(ss, *q);
    for (Cplx z : pts) values.push_back(qrat::cmat_to_json(qrat::eval_q(f, z)));
  } else {
    for (Cplx z : pts)
      values.push_back(qrat::cmat_to_json(qrat::eval_classical(ss, z)));
  }
  Json out;
  out["values"] = std::move(values);
  write_output(io.output, out);
  return kOk;
}

// ---------------------------------------------------------------- taylor

int cmd_taylor(const Io& io, const std::optional<double>& qflag) {
  const Json in = read_input(io.input);
  const qrat::StateSpace ss =
      qrat::statespace_from_json(field(in, "realization"), "realization");
  double q = qflag ? *qflag : qrat::q_from_json(field(in, "q"), "q");
  const long order = int_field(in, "order", 0, 100000);
  const qrat::QRational f(ss, q);
  const qrat::TaylorSeq ts = qrat::taylor_q(f, order);
  write_output(io.output, qrat::taylor_to_json(ts, q));
  return kOk;
}

// ---------------------------------------------------------------- borel

int cmd_borel(const Io& io, const std::optional<double>& qflag, bool inverse) {
  const Json in = read_input(io.input);
  auto [ts, qin] = qrat::taylor_from_json(in, "input");
  const double q = qflag ? *qflag : qin;
  const auto fact =
      qrat::q_bracket_tables(static_cast<long>(ts.coeffs.size()) - 1, q)
          .second;
  for (std::size_t k = 0; k < ts.coeffs.size(); ++k)
    ts.coeffs[k] = inverse ? CMat(ts.coeffs[k] * fact[k])
                           : CMat(ts.coeffs[k] / fact[k]);
  write_output(io.output, qrat::taylor_to_json(ts, q));
  return kOk;
}

// ---------------------------------------------------------------- realize

int cmd_realize(const Io& io, const std::optional<double>& qflag, double tol) {
  const Json in = read_input(io.input);
  auto [ts, qin] = qrat::taylor_from_json(in, "input");
  const double q = qflag ? *qflag : qin;
  qrat::RealizeInfo info;
  const qrat::QRational f = qrat::realize_from_taylor(ts, q, tol, &info);
  Json out;
  out["realization"] = qrat::qrational_to_json(f);
  out["rank"] = info.rank;
  out["rank_unstable"] = info.rank_unstable;
  out["singular_values"] = info.singular_values;
  write_output(io.output, out);
  return kOk;
}

// ---------------------------------------------------------------- reduce

int cmd_reduce(const Io& io, double tol) {
  const Json in = read_input(io.input);
  const qrat::StateSpace ss =
      qrat::statespace_from_json(field(in, "realization"), "realization");
  const qrat::StateSpace red = qrat::kalman_reduce(ss, tol);
  Json out;
  out["realization"] = qrat::statespace_to_json(red);
  out["state_dim_before"] = ss.state_dim();
  out["state_dim_after"] = red.state_dim();
  write_output(io.output, out);
  return kOk;
}

// ------------------------------------------------------- add / mul / inv

qrat::QRational read_qrational(const Json& j, const std::string& where,
                               const std::optional<double>& qflag) {
  if (qflag) {
    return qrat::QRational(qrat::statespace_from_json(j, where), *qflag);
  }
  return qrat::qrational_from_json(j, where);
}

int cmd_add(const Io& io, bool star, const std::optional<double>& qflag) {
  const Json in = read_input(io.input);
  Json out;
  if (star) {
    const auto f = read_qrational(field(in, "f"), "f", qflag);
    const auto g = read_qrational(field(in, "g"), "g", qflag);
    out["realization"] = qrat::qrational_to_json(qrat::star_sum(f, g));
  } else {
    const auto f = qrat::statespace_from_json(field(in, "f"), "f");
    const auto g = qrat::statespace_from_json(field(in, "g"), "g");
    out["realization"] = qrat::statespace_to_json(qrat::sum_weiz(f, g));
  }
  write_output(io.output, out);
  return kOk;
}

int cmd_mul(const Io& io, bool star, const std::optional<double>& qflag) {
  const Json in = read_input(io.input);
  Json out;
  if (star) {
    const auto f = read_qrational(field(in, "f"), "f", qflag);
    const auto g = read_qrational(field(in, "g"), "g", qflag);
    out["realization"] = qrat::qrational_to_json(qrat::star_product(f, g));
  } else {
    const auto f = qrat::statespace_from_json(field(in, "f"), "f");
    const auto g = qrat::statespace_from_json(field(in, "g"), "g");
    const qrat::StateSpace prod = f.has_d() || g.has_d()
                                      ? qrat::product_weiz(f, g)
                                      : qrat::product_weiz2(f, g);
    out["realization"] = qrat::statespace_to_json(prod);
  }
  write_output(io.output, out);
  return kOk;
}

int cmd_inv(const Io& io, bool star, const std::optional<double>& qflag) {
  const Json in = read_input(io.input);
  Json out;
  if (star) {
    const auto f = read_qrational(field(in, "f"), "f", qflag);
    out["realization"] = qrat::qrational_to_json(qrat::star_inverse(f));
  } else {
    const auto f = qrat::statespace_from_json(field(in, "f"), "f");
    const qrat::StateSpace iv =
        f.has_d() ? qrat::inverse_weiz(f) : qrat::inverse_weiz2(f);
    out["realization"] = qrat::statespace_to_json(iv);
  }
  write_output(io.output, out);
  return kOk;
}

// ---------------------------------------------------------------- jordan

int cmd_jordan(const Io& io, const std::optional<double>& qflag, double tol) {
  const Json in = read_input(io.input);
  const Cplx lambda = qrat::cplx_from_json(field(in, "lambda"), "lambda");
  const long size = int_field(in, "size", 1, 64);
  const CMat C = qrat::cmat_from_json(field(in, "C"), "C");
  const double q = qflag ? *qflag : qrat::q_from_json(field(in, "q"), "q");
  const auto pts = qrat::points_from_json(field(in, "points"), "points");

  Json values = Json::array();
  for (Cplx z : pts) {
    Json rec;
    rec["z"] = qrat::cplx_to_json(z);
    rec["value"] =
        qrat::cmat_to_json(qrat::jordan_chain_eval(lambda, size, C, z, q));
    values.push_back(std::move(rec));
  }
  const double resid = qrat::jordan_chain_residual(
      C, qrat::jordan_cell(lambda, size), lambda, q, pts);
  Json out;
  out["values"] = std::move(values);
  out["chain_residual"] = resid;
  out["pass"] = resid < tol;
  write_output(io.output, out);
  return resid < tol ? kOk : kNegative;
}

// ---------------------------------------------------------------- blaschke

int cmd_blaschke(const Io& io, const std::optional<double>& qflag) {
  const Json in = read_input(io.input);
  const Cplx a = qrat::cplx_from_json(field(in, "a"), "a");
  const auto pts = qrat::points_from_json(field(in, "points"), "points");

  Json values = Json::array();
  for (Cplx z : pts)
    values.push_back(qrat::cplx_to_json(
        qflag ? qrat::blaschke_q(a, *qflag, z) : qrat::blaschke(a, z)));

  double worst = 0.0;
  for (Cplx z : pts)
    for (Cplx w : pts)
      worst = std::max(
          worst, qflag ? qrat::blaschke_q_identity_residual(a, *qflag, z, w)
                       : qrat::blaschke_identity_residual(a, z, w));
  Json out;
  out["values"] = std::move(values);
  out["identity_max_residual"] = worst;
  write_output(io.output, out);
  return kOk;
}

// ---------------------------------------------------------------- theta

int cmd_theta(const Io& io, const std::optional<double>& qflag,
              std::size_t grid_size, double tol) {
  const Json in = read_input(io.input);
  const CMat J = qrat::cmat_from_json(field(in, "J"), "J");
  const CMat C = qrat::cmat_from_json(field(in, "C"), "C");
  const CMat A = qrat::cmat_from_json(field(in, "A"), "A");
  const Cplx z0 = in.contains("z0")
                      ? qrat::cplx_from_json(in["z0"], "z0")
                      : Cplx(1.0, 0.0);
  const std::vector<Cplx> pts =
      in.contains("points") ? qrat::points_from_json(in["points"], "points")
                            : qrat::disk_grid(8, 0.8);

  const CMat P = qrat::stein_solve(J, C, A);
  const auto td = qrat::make_theta(J, C, A, z0);

  Json samples = Json::array();
  for (Cplx z : pts) {
    Json rec;
    rec["z"] = qrat::cplx_to_json(z);
    rec["value"] = qrat::cmat_to_json(qrat::theta_eval(td, z));
    samples.push_back(std::move(rec));
  }

  double junit = 0.0;
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double t =
        2.0 * M_PI * static_cast<double>(k) / static_cast<double>(grid_size);
    junit = std::max(junit, qrat::theta_junitarity_defect(
                                td, Cplx(std::cos(t), std::sin(t))));
  }
  double kres = 0.0;
  for (Cplx z : pts)
    for (Cplx w : pts)
      kres = std::max(kres, qrat::theta_kernel_residual(td, z, w));

  bool pass = junit <= tol && kres <= tol;
  Json out;
  out["P"] = qrat::cmat_to_json(P);
  out["theta_at_points"] = std::move(samples);
  out["junitarity_max_defect"] = junit;
  out["kernel_identity_max_residual"] = kres;
  if (qflag) {
    const double radius = 0.95 / std::sqrt(1.0 - *qflag);
    const auto gram = qrat::theta_q_kernel_check(
        td, *qflag, qrat::disk_grid(grid_size, radius), tol);
    Json d;
    d["pass"] = gram.pass;
    d["min_eig"] = gram.min_eig;
    d["max_eig"] = gram.max_eig;
    out["deformed"] = std::move(d);
    pass = pass && gram.pass;
  }
  out["pass"] = pass;
  write_output(io.output, out);
  return pass ? kOk : kNegative;
}

// ---------------------------------------------------------------- multiplier

int cmd_multiplier(const Io& io, double q, std::size_t grid_size, double tol,
                   const std::optional<long>& shift,
                   const std::optional<long>& shift_min,
                   const std::optional<long>& shift_max) {
  const Json in = read_input(io.input);
  const Json& fn = field(in, "function");
  const std::string type = field(fn, "type").get<std::string>();

  std::function<Cplx(Cplx)> s;
  if (type == "blaschke") {
    const Cplx a = qrat::cplx_from_json(field(fn, "a"), "function.a");
    s = [a, q](Cplx z) { return qrat::blaschke_q(a, q, z); };
  } else if (type == "constant") {
    const Cplx c = qrat::cplx_from_json(field(fn, "value"), "function.value");
    s = [c](Cplx) { return c; };
  } else if (type == "coordinate") {
    s = [](Cplx z) { return z; };
  } else if (type == "realization") {
    auto f = qrat::qrational_from_json(field(fn, "realization"),
                                       "function.realization");
    if (f.ss.C.rows() != 1 || f.ss.B.cols() != 1)
      throw std::invalid_argument("multiplier: realization must be scalar");
    if (std::abs(f.q - q) > 1e-12)
      throw std::invalid_argument(
          "multiplier: realization q must match the --q flag");
    s = [f = std::move(f)](Cplx z) { return qrat::eval_q(f, z)(0, 0); };
  } else {
    throw std::invalid_argument("multiplier: unknown function type \"" + type +
                                "\"");
  }

  qrat::SampledGram gram;
  std::string mode;
  if (shift_min || shift_max) {
    if (!shift_min || !shift_max || *shift_min < 0 || *shift_max < *shift_min)
      throw std::invalid_argument(
          "multiplier: --shift-min/--shift-max must give a nonempty range");
    mode = "shifted-product";
    const double radius = 0.95 / std::sqrt(1.0 - q);
    gram = qrat::shifted_schur_product_check(
        s, q, static_cast<std::size_t>(*shift_min),
        static_cast<std::size_t>(*shift_max), qrat::disk_grid(grid_size, radius),
        tol);
  } else if (shift) {
    if (*shift < 0) throw std::invalid_argument("multiplier: negative shift");
    mode = "shifted";
    const double radius = 0.95 / std::sqrt(1.0 - q);
    gram = qrat::shifted_schur_check(s, q, static_cast<std::size_t>(*shift),
                                     qrat::disk_grid(grid_size, radius), tol);
  } else {
    mode = "base";
    gram =
        qrat::schur_multiplier_check_q(s, q, qrat::disk_grid(grid_size, 0.95), tol);
  }

  Json out;
  out["mode"] = mode;
  out["q"] = q;
  out["grid_points"] = grid_size;
  out["min_eig"] = gram.min_eig;
  out["max_eig"] = gram.max_eig;
  out["pass"] = gram.pass;
  write_output(io.output, out);
  return gram.pass ? kOk : kNegative;
}

// ---------------------------------------------------------------- kernel-test

int cmd_kernel_test(const Io& io, const std::string& kind, bool have_input,
                    std::optional<double> qflag, long n, double eps, double r) {
  namespace cnp = qrat::cnp;
  const double q = qflag.value_or(0.5);
  if (n < 2 || n > 100000)
    throw std::invalid_argument("kernel-test: --n must be in [2, 100000]");

  cnp::CoeffSeq seq = [&]() -> cnp::CoeffSeq {
    if (kind == "dirichlet") return cnp::dirichlet(n);
    if (kind == "q-dirichlet") return cnp::q_dirichlet(q, n);
    if (kind == "eq") return cnp::eq_coeffs(q, n);
    if (kind == "q-gamma") return cnp::q_gamma_kernel(q, r, n);
    if (kind == "hardy-sobolev") return cnp::hardy_sobolev_classical(eps, n);
    if (kind == "q-hardy-sobolev") return cnp::q_hardy_sobolev(q, eps, n);
    if (kind == "partition") {
      if (!have_input)
        throw std::invalid_argument(
            "kernel-test partition: provide --input with {\"energies\": [..]}");
      const Json in = read_input(io.input);
      const Json& es = field(in, "energies");
      if (!es.is_array() || es.empty())
        throw std::invalid_argument("energies: expected a nonempty array");
      std::vector<double> E;
      for (const auto& e : es) {
        if (!e.is_number())
          throw std::invalid_argument("energies: entries must be numbers");
        E.push_back(e.get<double>());
      }
      return cnp::partition_seq(E, n);
    }
    throw std::invalid_argument("kernel-test: unknown sequence kind \"" +
                                kind + "\"");
  }();

  const auto kv = cnp::kaluza_check(seq);
  Json out;
  out["kind"] = kind;
  Json kj;
  kj["pass"] = kv.pass;
  if (!kv.pass) {
    kj["first_violation"] = kv.first_violation;
    kj["ratio_gap"] = kv.ratio_gap;
  }
  out["kaluza"] = std::move(kj);

  bool pass = kv.pass;
  const bool recip_applicable =
      seq.start_index == 0 && !seq.values.empty() && seq.values[0] > 0.0;
  if (recip_applicable) {
    // Positive rescaling leaves log-convexity untouched and normalizes a_0
    // to 1, which the one-positive-square test requires.
    cnp::CoeffSeq unit = seq;
    for (double& v : unit.values) v /= seq.values[0];
    const std::size_t depth = std::min<std::size_t>(50, unit.values.size() - 1);
    if (depth >= 1) {
      const auto rv = cnp::reciprocal_nonneg_check(unit, depth, 1e-12);
      Json rj;
      rj["pass"] = rv.pass;
      rj["min_coeff"] = rv.min_coeff;
      if (!rv.pass) rj["first_violation"] = rv.first_violation;
      out["reciprocal"] = std::move(rj);
      pass = pass && rv.pass;
    }
  }
  out["pass"] = pass;
  write_output(io.output, out);
  return pass ? kOk : kNegative;
}

// ---------------------------------------------------------------- pick

int cmd_pick(const Io& io, double tol, std::size_t grid_size,
             std::uint64_t seed) {
  namespace interp = qrat::interp;
  const Json in = read_input(io.input);
  interp::PickProblem pb;
  pb.ball_dim = static_cast<std::size_t>(int_field(in, "N", 1, 64));
  const Json& nodes = field(in, "nodes");
  if (!nodes.is_array() || nodes.empty())
    throw std::invalid_argument("nodes: expected a nonempty array");
  for (std::size_t k = 0; k < nodes.size(); ++k)
    pb.nodes.push_back(
        qrat::cvec_from_json(nodes[k], "nodes[" + std::to_string(k) + "]"));

  const std::string mode = field(in, "mode").get<std::string>();
  const Json& targets = field(in, "targets");
  if (mode == "full") {
    const Json& vals = field(targets, "values");
    if (!vals.is_array())
      throw std::invalid_argument("targets.values: expected an array");
    for (std::size_t k = 0; k < vals.size(); ++k)
      pb.values.push_back(qrat::cmat_from_json(
          vals[k], "targets.values[" + std::to_string(k) + "]"));
  } else if (mode == "tangential") {
    const Json& xs = field(targets, "xi");
    const Json& es = field(targets, "eta");
    if (!xs.is_array() || !es.is_array())
      throw std::invalid_argument("targets.xi/eta: expected arrays");
    for (std::size_t k = 0; k < xs.size(); ++k)
      pb.xi.push_back(
          qrat::cvec_from_json(xs[k], "targets.xi[" + std::to_string(k) + "]"));
    for (std::size_t k = 0; k < es.size(); ++k)
      pb.eta.push_back(qrat::cvec_from_json(
          es[k], "targets.eta[" + std::to_string(k) + "]"));
  } else {
    throw std::invalid_argument("mode must be \"full\" or \"tangential\"");
  }

  const auto res = interp::pick_solve(pb, tol, 1e-6, grid_size, seed);
  Json out;
  out["solvable"] = res.assessment.solvable;
  out["degenerate"] = res.assessment.degenerate;
  out["min_eig"] = res.assessment.min_eig;
  out["max_eig"] = res.assessment.max_eig;
  if (res.solved) {
    out["residuals"] = res.report.node_residuals;
    out["contractivity_min_eig"] = res.report.gram_min_eig;
    out["identity_residual"] = res.theta->identity_residual;
    Json samples = Json::array();
    for (const CVec& z : interp::ball_grid(pb.ball_dim, 5, 0.6, seed)) {
      Json rec;
      rec["lambda"] = qrat::cvec_to_json(z);
      rec["value"] = qrat::cmat_to_json(interp::central_eval(*res.theta, z));
      samples.push_back(std::move(rec));
    }
    out["central_solution_samples"] = std::move(samples);
    out["pass"] = res.report.pass;
  } else {
    out["pass"] = false;
  }
  write_output(io.output, out);
  return res.solved && res.report.pass ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "q-rational function toolkit: state-space evaluation and calculus,\n"
      "coefficient transforms, kernel certificates, and interpolation.\n"
      "All subcommands speak JSON: complex numbers are [re, im] pairs,\n"
      "matrices are {rows, cols, data} with row-major data."};
  app.require_subcommand(1);

  int rc = kOk;
  auto guarded = [&rc](auto&& fn) {
    try {
      rc = fn();
    } catch (const std::invalid_argument& e) {
      std::cerr << "input error: " << e.what() << "\n";
      rc = kBadInput;
    } catch (const Json::exception& e) {
      std::cerr << "input error: " << e.what() << "\n";
      rc = kBadInput;
    } catch (const qrat::numeric_error& e) {
      std::cerr << "numeric error: " << e.what() << "\n";
      rc = kNumeric;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = kNumeric;
    }
  };

  // Shared option state. Each subcommand registers only the flags it uses.
  Io io;
  std::optional<double> qflag;
  double tol = 1e-9;
  double loose_tol = 1e-8;  // default for residual-based verdicts
  std::size_t grid_size = 40;
  std::uint64_t seed = 20240811u;
  bool star = false;
  bool inverse = false;
  std::optional<long> shift, shift_min, shift_max;
  std::string kind;
  double eps = 0.5, rpar = 0.5;
  long nmax = 100;

  auto add_io = [&io](CLI::App* sub) {
    sub->add_option("--input", io.input, "input JSON file, '-' for stdin");
    sub->add_option("--output", io.output, "output JSON file, '-' for stdout");
  };

  {
    auto* c = app.add_subcommand(
        "eval",
        "Evaluate a realization.\n"
        "in : {realization:{C,A,B[,D]}, points:[[re,im],..][, q]}\n"
        "out: {values:[matrix,..]}\n"
        "With q (field or --q): deformed product evaluation of a D-free\n"
        "realization; without q: classical D + zC(I-zA)^{-1}B.");
    add_io(c);
    c->add_option("--q", qflag, "deformation parameter in [0,1)");
    c->callback([&] { guarded([&] { return cmd_eval(io, qflag); }); });
  }
  {
    auto* c = app.add_subcommand(
        "taylor",
        "Taylor coefficients of a D-free realization.\n"
        "in : {realization:{C,A,B}, q, order}\n"
        "out: {q, coeffs:[matrix,..]}  (coefficient k = C A^k B / [k]!)");
    add_io(c);
    c->add_option("--q", qflag, "override the input q");
    c->callback([&] { guarded([&] { return cmd_taylor(io, qflag); }); });
  }
  {
    auto* c = app.add_subcommand(
        "borel",
        "Coefficientwise bracket-factorial rescaling.\n"
        "in : {q, coeffs:[matrix,..]}\n"
        "out: {q, coeffs:[matrix,..]}  (divides by [k]!; --inverse multiplies)");
    add_io(c);
    c->add_option("--q", qflag, "override the input q");
    c->add_flag("--inverse", inverse, "multiply by [k]! instead of dividing");
    c->callback([&] { guarded([&] { return cmd_borel(io, qflag, inverse); }); });
  }
  {
    auto* c = app.add_subcommand(
        "realize",
        "Identify a minimal D-free realization from coefficients.\n"
        "in : {q, coeffs:[matrix,..]}\n"
        "out: {realization:{C,A,B,q}, rank, rank_unstable, singular_values}");
    add_io(c);
    c->add_option("--q", qflag, "override the input q");
    c->add_option("--tol", tol, "singular-value cutoff (default 1e-9)");
    c->callback([&] { guarded([&] { return cmd_realize(io, qflag, tol); }); });
  }
  {
    auto* c = app.add_subcommand(
        "reduce",
        "Minimal realization with the same Markov parameters.\n"
        "in : {realization:{C,A,B[,D]}}\n"
        "out: {realization, state_dim_before, state_dim_after}");
    add_io(c);
    c->add_option("--tol", tol, "singular-value cutoff (default 1e-9)");
    c->callback([&] { guarded([&] { return cmd_reduce(io, tol); }); });
  }
  {
    auto* c = app.add_subcommand(
        "add",
        "Sum of two realizations (direct-sum state).\n"
        "in : {f:{C,A,B[,D][,q]}, g:{..}}\n"
        "out: {realization}\n"
        "--star: coefficientwise sum of deformed functions (D-free, same q).");
    add_io(c);
    c->add_flag("--star", star, "deformed-function arithmetic");
    c->add_option("--q", qflag, "q for both operands when absent from input");
    c->callback([&] { guarded([&] { return cmd_add(io, star, qflag); }); });
  }
  {
    auto* c = app.add_subcommand(
        "mul",
        "Product of two realizations (cascade state).\n"
        "in : {f:{C,A,B[,D][,q]}, g:{..}}\n"
        "out: {realization}\n"
        "Both operands must carry D, or neither. --star: the weighted\n"
        "convolution product of deformed functions (D-free, same q).");
    add_io(c);
    c->add_flag("--star", star, "deformed-function arithmetic");
    c->add_option("--q", qflag, "q for both operands when absent from input");
    c->callback([&] { guarded([&] { return cmd_mul(io, star, qflag); }); });
  }
  {
    auto* c = app.add_subcommand(
        "inv",
        "Pointwise inverse realization.\n"
        "in : {f:{C,A,B[,D][,q]}}\n"
        "out: {realization}\n"
        "--star: inverse for the deformed product (D-free, constant term\n"
        "invertible).");
    add_io(c);
    c->add_flag("--star", star, "deformed-function arithmetic");
    c->add_option("--q", qflag, "q when absent from input");
    c->callback([&] { guarded([&] { return cmd_inv(io, star, qflag); }); });
  }
  {
    auto* c = app.add_subcommand(
        "jordan",
        "Evaluate and verify a Jordan-cell chain.\n"
        "in : {lambda:[re,im], size, C, q, points:[[re,im],..]}\n"
        "out: {values:[{z,value},..], chain_residual, pass}\n"
        "Exit 3 when the difference-quotient chain relations fail --tol.");
    add_io(c);
    c->add_option("--q", qflag, "override the input q");
    c->add_option("--tol", loose_tol, "chain-relation tolerance (default 1e-8)");
    c->callback([&] { guarded([&] { return cmd_jordan(io, qflag, loose_tol); }); });
  }
  {
    auto* c = app.add_subcommand(
        "blaschke",
        "Disk automorphism samples and kernel-identity residuals.\n"
        "in : {a:[re,im], points:[[re,im],..]}\n"
        "out: {values:[[re,im],..], identity_max_residual}\n"
        "--q evaluates the deformed variant b_a(sqrt(1-q) z).");
    add_io(c);
    c->add_option("--q", qflag, "deformation parameter");
    c->callback([&] { guarded([&] { return cmd_blaschke(io, qflag); }); });
  }
  {
    auto* c = app.add_subcommand(
        "theta",
        "J-inner coefficient matrix from a signature-Stein system.\n"
        "in : {J, C, A[, z0:[re,im]][, points:[[re,im],..]]}\n"
        "out: {P, theta_at_points, junitarity_max_defect,\n"
        "      kernel_identity_max_residual[, deformed], pass}\n"
        "--q adds the deformed kernel positivity check. Exit 3 on fail.");
    add_io(c);
    c->add_option("--q", qflag, "deformation parameter");
    c->add_option("--grid-size", grid_size, "circle/disk sample count");
    c->add_option("--tol", loose_tol, "residual tolerance (default 1e-8)");
    c->callback([&] {
      guarded([&] { return cmd_theta(io, qflag, grid_size, loose_tol); });
    });
  }
  {
    auto* c = app.add_subcommand(
        "multiplier",
        "Contractive-multiplier certificate on the deformed space.\n"
        "in : {function:{type:blaschke|constant|coordinate|realization,..}}\n"
        "out: {mode, q, grid_points, min_eig, max_eig, pass}\n"
        "--shift k tests one shifted copy; --shift-min/--shift-max a finite\n"
        "product of shifted copies. Exit 3 when the Gram test fails.");
    add_io(c);
    c->add_option("--q", qflag, "deformation parameter (required)")->required();
    c->add_option("--grid-size", grid_size, "Gram sample count (default 40)");
    c->add_option("--tol", tol, "eigenvalue tolerance (default 1e-9)");
    c->add_option("--shift", shift, "single shifted-copy check");
    c->add_option("--shift-min", shift_min, "product range start");
    c->add_option("--shift-max", shift_max, "product range end");
    c->callback([&] {
      guarded([&] {
        return cmd_multiplier(io, *qflag, grid_size, tol, shift, shift_min,
                              shift_max);
      });
    });
  }
  {
    auto* c = app.add_subcommand(
        "kernel-test",
        "Log-convexity and one-positive-square certificates.\n"
        "usage: kernel-test KIND [--q] [--n] [--eps] [--r]\n"
        "KIND: dirichlet | q-dirichlet | eq | q-gamma | hardy-sobolev |\n"
        "      q-hardy-sobolev | partition (partition reads --input\n"
        "      {energies:[..]})\n"
        "out: {kind, kaluza:{..}[, reciprocal:{..}], pass}. Exit 3 on fail.");
    add_io(c);
    c->add_option("kind", kind, "sequence family")->required();
    c->add_option("--q", qflag, "deformation parameter (default 0.5)");
    c->add_option("--n", nmax, "coefficient count (default 100)");
    c->add_option("--eps", eps, "weight exponent (default 0.5)");
    c->add_option("--r", rpar, "ratio parameter in (0,1] (default 0.5)");
    c->callback([&] {
      guarded([&] {
        const bool have_input = c->count("--input") > 0;
        return cmd_kernel_test(io, kind, have_input, qflag, nmax, eps, rpar);
      });
    });
  }
  {
    auto* c = app.add_subcommand(
        "pick",
        "Interpolation in the unit ball: solvability, central solution,\n"
        "a posteriori verification.\n"
        "in : {N, nodes:[[ [re,im],..],..], mode:full|tangential,\n"
        "      targets:{values:[matrix,..]} | {xi:[vec,..], eta:[vec,..]}}\n"
        "out: {solvable, degenerate, min_eig, max_eig[, residuals,\n"
        "      contractivity_min_eig, central_solution_samples], pass}\n"
        "Exit 3 when unsolvable, degenerate, or verification fails.");
    add_io(c);
    c->add_option("--tol", tol, "positivity tolerance (default 1e-9)");
    c->add_option("--grid-size", grid_size,
                  "verification grid size (default 40)");
    c->add_option("--seed", seed,
                  "sampling seed for ball grids with more than one variable");
    c->callback(
        [&] { guarded([&] { return cmd_pick(io, tol, grid_size, seed); }); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  }
  return rc;
}
