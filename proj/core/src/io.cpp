#include "hsx/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error(ErrorKind::IoError, "cannot format number");
  return std::string(buf, ptr);
}

namespace {

nlohmann::json pairs(const std::vector<Knot>& knots) {
  nlohmann::json out = nlohmann::json::array();
  for (const Knot& k : knots) out.push_back({k.x, k.value});
  return out;
}

double number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw Error(ErrorKind::ParseError, "expected a number", field);
  return j.get<double>();
}

std::vector<Knot> read_pairs(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of [x, v] pairs", field);
  std::vector<Knot> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw Error(ErrorKind::ParseError, "expected an [x, v] pair", at);
    out.push_back({number(j[i][0], at + "[0]"), number(j[i][1], at + "[1]")});
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const RadonMeasure& mu) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : mu.atoms()) atoms.push_back({a.position, a.mass});
  return {{"atoms", atoms}, {"density_knots", pairs(mu.density_knots())}};
}

nlohmann::json to_json(const EulerianState& s) {
  return {{"u", {{"knots", pairs(s.u.knots)}, {"tail_minus", s.u.tail_minus}, {"tail_plus", s.u.tail_plus}}},
          {"mu", to_json(s.mu)}};
}

EulerianState eulerian_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("u")) throw Error(ErrorKind::ParseError, "state needs a \"u\" object", "u");
  const auto& u = j.at("u");
  if (!u.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "u");
  PiecewiseLinear pl;
  pl.knots = u.contains("knots") ? read_pairs(u.at("knots"), "u.knots") : std::vector<Knot>{};
  const double fallback_lo = pl.knots.empty() ? 0.0 : pl.knots.front().value;
  const double fallback_hi = pl.knots.empty() ? 0.0 : pl.knots.back().value;
  pl.tail_minus = u.contains("tail_minus") ? number(u.at("tail_minus"), "u.tail_minus") : fallback_lo;
  pl.tail_plus = u.contains("tail_plus") ? number(u.at("tail_plus"), "u.tail_plus") : fallback_hi;

  std::vector<Atom> atoms;
  std::vector<Knot> density;
  if (j.contains("mu")) {
    const auto& mu = j.at("mu");
    if (!mu.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "mu");
    if (mu.contains("atoms")) {
      for (const Knot& k : read_pairs(mu.at("atoms"), "mu.atoms")) atoms.push_back({k.x, k.value});
    }
    if (mu.contains("density_knots")) density = read_pairs(mu.at("density_knots"), "mu.density_knots");
  }
  try {
    EulerianState s{std::move(pl), RadonMeasure(std::move(atoms), std::move(density))};
    check_in_D(s);
    return s;
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, e.what(), "state");
  }
}

nlohmann::json to_json(const Grid& g) {
  return {{"xi_min", g.xi_min()}, {"xi_max", g.xi_max()}, {"n", g.size()}, {"h", g.spacing()}};
}

nlohmann::json to_json(const Tails& t) {
  return {{"zeta_minus", t.zeta_minus},
          {"zeta_plus", t.zeta_plus},
          {"u_minus", t.u_minus},
          {"u_plus", t.u_plus},
          {"h_minus", 0.0},
          {"h_infinity", t.h_inf}};
}

std::string lagrangian_csv(const LagrangianState& x) {
  std::string out = "xi,y,U,H\n";
  for (std::size_t i = 0; i < x.grid.size(); ++i) {
    out += format_double(x.grid.node(i));
    out += ',';
    out += format_double(x.y[i]);
    out += ',';
    out += format_double(x.U[i]);
    out += ',';
    out += format_double(x.H[i]);
    out += '\n';
  }
  return out;
}

std::string eulerian_csv(const EulerianState& s) {
  std::string out = "x,u\n";
  for (const Knot& k : s.u.knots) {
    out += format_double(k.x);
    out += ',';
    out += format_double(k.value);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing", path.string());
  f << text;
  if (!f) throw Error(ErrorKind::IoError, "failed writing " + path.string(), path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string(), path.string());
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what(), path.string());
  }
}

void write_lagrangian(const std::filesystem::path& dir, const std::string& stem, const LagrangianState& x) {
  write_text(dir / (stem + ".csv"), lagrangian_csv(x));
  write_json(dir / (stem + ".tails.json"), {{"tails", to_json(x.tails)}, {"grid", to_json(x.grid)}});
}

void write_eulerian(const std::filesystem::path& dir, const std::string& stem, const EulerianState& s) {
  write_text(dir / (stem + ".csv"), eulerian_csv(s));
  nlohmann::json side = to_json(s.mu);
  side["u_tail_minus"] = s.u.tail_minus;
  side["u_tail_plus"] = s.u.tail_plus;
  write_json(dir / (stem + ".measure.json"), side);
}

LagrangianState read_lagrangian(const std::filesystem::path& dir, const std::string& stem) {
  const nlohmann::json side = read_json(dir / (stem + ".tails.json"));
  const auto& g = side.at("grid");
  const std::size_t n = g.at("n").get<std::size_t>();
  const Grid grid = Grid::with_spacing(g.at("xi_min").get<double>(), g.at("h").get<double>(), n);
  LagrangianState x{grid, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), Tails{}};
  const auto& t = side.at("tails");
  x.tails = Tails{t.at("zeta_minus").get<double>(), t.at("zeta_plus").get<double>(), t.at("u_minus").get<double>(),
                  t.at("u_plus").get<double>(), t.at("h_infinity").get<double>()};

  std::ifstream f(dir / (stem + ".csv"));
  if (!f) throw Error(ErrorKind::IoError, "cannot open snapshot " + stem, stem);
  std::string line;
  std::getline(f, line);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(f, line)) throw Error(ErrorKind::ParseError, "snapshot has too few rows", stem);
    double v[4];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (double& slot : v) {
      const auto [next, ec] = std::from_chars(p, end, slot);
      if (ec != std::errc()) throw Error(ErrorKind::ParseError, "bad number in snapshot row " + std::to_string(i), stem);
      p = next < end ? next + 1 : next;
    }
    x.y[i] = v[1];
    x.U[i] = v[2];
    x.H[i] = v[3];
  }
  return x;
}

}  // namespace hsx
