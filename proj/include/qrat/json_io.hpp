#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include <qrat/core.hpp>
#include <qrat/state_space.hpp>

// JSON encoding used by the command-line tool and golden files.  Complex
// numbers are [re, im] pairs; matrices carry explicit "rows"/"cols" and a
// row-major "data" array, which keeps fixtures diff-friendly.  Readers take
// a location label so error messages can point into the document.
namespace qrat {

using Json = nlohmann::ordered_json;

inline Json cplx_to_json(Cplx v) { return Json::array({v.real(), v.imag()}); }

inline Cplx cplx_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(where + ": expected a [re, im] pair");
  return Cplx(j[0].get<double>(), j[1].get<double>());
}

inline Json cmat_to_json(const CMat& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back(cplx_to_json(m(r, c)));
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  return out;
}

inline CMat cmat_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw std::invalid_argument(where +
                                ": expected {rows, cols, data} matrix object");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    throw std::invalid_argument(where + ": rows/cols must be nonnegative");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  const Json& data = j["data"];
  if (!data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols))
    throw std::invalid_argument(where + ": data must hold rows*cols entries");
  CMat m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++k)
      m(r, c) = cplx_from_json(data[k],
                               where + ".data[" + std::to_string(k) + "]");
  return m;
}

inline Json statespace_to_json(const StateSpace& ss) {
  Json out;
  out["C"] = cmat_to_json(ss.C);
  out["A"] = cmat_to_json(ss.A);
  out["B"] = cmat_to_json(ss.B);
  if (ss.has_d()) out["D"] = cmat_to_json(*ss.D);
  return out;
}

inline StateSpace statespace_from_json(const Json& j,
                                       const std::string& where) {
  if (!j.is_object())
    throw std::invalid_argument(where + ": expected a realization object");
  for (const char* key : {"C", "A", "B"})
    if (!j.contains(key))
      throw std::invalid_argument(where + ": missing block \"" + key + "\"");
  std::optional<CMat> D;
  if (j.contains("D")) D = cmat_from_json(j["D"], where + ".D");
  try {
    return StateSpace(cmat_from_json(j["C"], where + ".C"),
                      cmat_from_json(j["A"], where + ".A"),
                      cmat_from_json(j["B"], where + ".B"), std::move(D));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

inline Json qrational_to_json(const QRational& f) {
  Json out = statespace_to_json(f.ss);
  out["q"] = f.q;
  return out;
}

inline double q_from_json(const Json& j, const std::string& where) {
  if (!j.is_number())
    throw std::invalid_argument(where + ": q must be a number");
  return j.get<double>();
}

inline QRational qrational_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("q"))
    throw std::invalid_argument(where + ": expected a realization with q");
  return QRational(statespace_from_json(j, where),
                   q_from_json(j["q"], where + ".q"));
}

inline Json taylor_to_json(const TaylorSeq& ts, double q) {
  Json out;
  out["q"] = q;
  Json coeffs = Json::array();
  for (const CMat& T : ts.coeffs) coeffs.push_back(cmat_to_json(T));
  out["coeffs"] = std::move(coeffs);
  return out;
}

inline std::pair<TaylorSeq, double> taylor_from_json(
    const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("q") || !j.contains("coeffs"))
    throw std::invalid_argument(where + ": expected {q, coeffs}");
  const double q = q_from_json(j["q"], where + ".q");
  const Json& coeffs = j["coeffs"];
  if (!coeffs.is_array() || coeffs.empty())
    throw std::invalid_argument(where + ".coeffs: expected a nonempty array");
  std::vector<CMat> mats;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    mats.push_back(cmat_from_json(
        coeffs[k], where + ".coeffs[" + std::to_string(k) + "]"));
  try {
    return {TaylorSeq(std::move(mats)), q};
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + ".coeffs: " + e.what());
  }
}

inline std::vector<Cplx> points_from_json(const Json& j,
                                          const std::string& where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(where + ": expected a nonempty point array");
  std::vector<Cplx> pts;
  for (std::size_t k = 0; k < j.size(); ++k)
    pts.push_back(
        cplx_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return pts;
}

inline Json points_to_json(const std::vector<Cplx>& pts) {
  Json out = Json::array();
  for (Cplx z : pts) out.push_back(cplx_to_json(z));
  return out;
}

inline CVec cvec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(where + ": expected a nonempty vector array");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k)
    v(static_cast<Eigen::Index>(k)) =
        cplx_from_json(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

inline Json cvec_to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k)
    out.push_back(cplx_to_json(v(k)));
  return out;
}

}  // namespace qrat
