#include "schrolet/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace schrolet {

std::string fmt(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  o << text;
  if (!o) throw Error(ErrorKind::io, "write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream i(path, std::ios::binary);
  if (!i) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream s;
  s << i.rdbuf();
  return s.str();
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  if (rows.empty()) throw Error(ErrorKind::io, "'" + path + "' holds no data rows");
  return rows;
}

double num(const std::string& s, const std::string& path, std::size_t row) {
  try {
    return std::stod(s);
  } catch (...) {
    throw Error(ErrorKind::io, "'" + path + "' row " + std::to_string(row + 1) + ": not a number: '" + s + "'");
  }
}

}  // namespace

std::string radial_csv(const RadialFunction& f) {
  std::string out = "omega,re,im\n";
  for (std::size_t p = 0; p < f.size(); ++p)
    out += fmt(f.grid.node(p)) + "," + fmt(f[p].real()) + "," + fmt(f[p].imag()) + "\n";
  return out;
}

RadialFunction read_radial_csv(const std::string& path, const RadialGrid& grid) {
  auto rows = parse_csv(read_text(path), path);
  if (rows.size() != grid.size())
    throw Error(ErrorKind::io, "'" + path + "' has " + std::to_string(rows.size()) + " rows, grid has " +
                                   std::to_string(grid.size()) + " nodes");
  RadialFunction f(grid);
  for (std::size_t p = 0; p < rows.size(); ++p) {
    if (rows[p].size() < 2) throw Error(ErrorKind::io, "'" + path + "' row " + std::to_string(p + 1) + ": too few columns");
    double w = num(rows[p][0], path, p);
    if (std::abs(w - grid.node(p)) > 1e-12 * grid.node(p))
      throw Error(ErrorKind::io, "'" + path + "' row " + std::to_string(p + 1) + ": omega is not the grid node");
    f[p] = cplx(num(rows[p][1], path, p), rows[p].size() > 2 ? num(rows[p][2], path, p) : 0.0);
  }
  return f;
}

std::string sequence_csv(const SequenceSignal& f) {
  std::string out = "label,m,omega,re,im\n";
  for (std::size_t l = 0; l < f.labels.size(); ++l)
    for (std::size_t m = 0; m < f.comps[l].size(); ++m)
      for (std::size_t p = 0; p < f.grid.size(); ++p) {
        cplx v = f.comps[l][m][p];
        if (v == cplx{}) continue;
        out += std::to_string(f.labels[l].index) + "," + std::to_string(m) + "," + fmt(f.grid.node(p)) + "," +
               fmt(v.real()) + "," + fmt(v.imag()) + "\n";
      }
  return out;
}

SequenceSignal read_sequence_csv(const std::string& path, const SequenceSignal& shape) {
  auto rows = parse_csv(read_text(path), path);
  SequenceSignal f = shape;
  for (auto& c : f.comps)
    for (auto& r : c) std::fill(r.values.begin(), r.values.end(), cplx{});
  const auto& g = f.grid;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() < 5) throw Error(ErrorKind::io, "'" + path + "' row " + std::to_string(r + 1) + ": expected 5 columns");
    int lab = static_cast<int>(num(row[0], path, r));
    int m = static_cast<int>(num(row[1], path, r));
    double w = num(row[2], path, r);
    int pos = f.label_pos({f.d, lab});
    if (pos < 0 || m < 0 || m >= static_cast<int>(f.comps[pos].size()))
      throw Error(ErrorKind::io, "'" + path + "' row " + std::to_string(r + 1) + ": label/component outside the signal");
    double u = std::log2(w) * g.Q - static_cast<double>(g.omega_min_exp) * g.Q;
    long p = std::lround(u);
    if (p < 0 || p >= static_cast<long>(g.size()) || std::abs(g.node(p) - w) > 1e-12 * w)
      throw Error(ErrorKind::io, "'" + path + "' row " + std::to_string(r + 1) + ": omega is not a grid node");
    f.comps[pos][m][p] = cplx(num(row[3], path, r), num(row[4], path, r));
  }
  return f;
}

void write_cartesian(const std::string& stem, const CartesianSignal& f) {
  std::vector<double> raw(2 * f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    raw[2 * i] = f.values[i].real();
    raw[2 * i + 1] = f.values[i].imag();
  }
  static_assert(std::endian::native == std::endian::little, "raw signal files are little-endian");
  std::string bytes(reinterpret_cast<const char*>(raw.data()), raw.size() * sizeof(double));
  write_text(stem + ".bin", bytes);
  json meta = {{"d", f.d}, {"N", f.N}, {"Xi", f.Xi}, {"layout", "row-major, last axis fastest, (re, im) float64 LE"}};
  write_text(stem + ".json", meta.dump(2) + "\n");
}

CartesianSignal read_cartesian(const std::string& stem) {
  json meta;
  try {
    meta = json::parse(read_text(stem + ".json"));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, stem + ".json: " + e.what());
  }
  CartesianSignal f(meta.at("d").get<int>(), meta.at("N").get<int>(), meta.at("Xi").get<double>());
  auto bytes = read_text(stem + ".bin");
  if (bytes.size() != f.size() * 2 * sizeof(double))
    throw Error(ErrorKind::io, stem + ".bin: size does not match the sidecar");
  std::vector<double> raw(2 * f.size());
  std::memcpy(raw.data(), bytes.data(), bytes.size());
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = cplx(raw[2 * i], raw[2 * i + 1]);
  return f;
}

std::string coefficients_csv(const CoefficientTable& c) {
  const auto& s = c.grid;
  std::string out = "j,k,l,re,im,abs2\n";
  for (int j = s.jmin; j <= s.jmax; ++j)
    for (int k = -s.K; k <= s.K; ++k)
      for (int l = 0; l < s.L; ++l) {
        cplx v = c.at(j, k, l);
        out += std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) + "," + fmt(v.real()) + "," +
               fmt(v.imag()) + "," + fmt(std::norm(v)) + "\n";
      }
  return out;
}

json coefficients_meta(const CoefficientTable& c) {
  return {{"generator", c.generator_id},
          {"j_range", {c.grid.jmin, c.grid.jmax}},
          {"K", c.grid.K},
          {"L", c.grid.L},
          {"ordering", "lexicographic (j, k, l)"},
          {"dropped_mass", c.dropped_mass},
          {"sum_sq", c.sum_sq()}};
}

CoefficientTable read_coefficients(const std::string& csv_path, const std::string& meta_path) {
  json meta;
  try {
    meta = json::parse(read_text(meta_path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, meta_path + ": " + e.what());
  }
  CoefficientTable c;
  c.generator_id = meta.at("generator").get<std::string>();
  c.grid = {meta.at("j_range")[0].get<int>(), meta.at("j_range")[1].get<int>(), meta.at("K").get<int>(),
            meta.at("L").get<int>()};
  c.dropped_mass = meta.value("dropped_mass", std::vector<double>(c.grid.nj(), 0.0));
  c.c.assign(c.grid.size(), cplx{});
  auto rows = parse_csv(read_text(csv_path), csv_path);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() < 5) throw Error(ErrorKind::io, csv_path + " row " + std::to_string(r + 1) + ": expected 6 columns");
    int j = int(num(row[0], csv_path, r)), k = int(num(row[1], csv_path, r)), l = int(num(row[2], csv_path, r));
    if (j < c.grid.jmin || j > c.grid.jmax || std::abs(k) > c.grid.K || l < 0 || l >= c.grid.L)
      throw Error(ErrorKind::io, csv_path + " row " + std::to_string(r + 1) + ": index outside the metadata ranges");
    c.at(j, k, l) = cplx(num(row[3], csv_path, r), num(row[4], csv_path, r));
  }
  return c;
}

json to_json(const ConditionReport& r) {
  json m = json::object();
  for (const auto& [k, v] : r.measured) m[k] = v;
  return {{"id", r.id}, {"description", r.description}, {"tolerance", r.tolerance}, {"max_residual", r.max_residual},
          {"pass", r.pass}, {"measured", m}, {"notes", r.notes}};
}

json to_json(const ParsevalReport& r) {
  return {{"sum_sq", r.sum_sq},       {"norm_sq", r.norm_sq},         {"ratio", r.ratio},
          {"tail_bound", r.tail_bound}, {"tolerance", r.tolerance},   {"inconclusive", r.inconclusive},
          {"pass", r.pass}};
}

json to_json(const ReproducingReport& r) {
  return {{"estimate", r.estimate}, {"norm_sq", r.norm_sq},     {"ratio", r.ratio},
          {"dilation_loss", r.dilation_loss}, {"nodes", r.nodes}, {"notes", r.notes}};
}

json to_json(const RefinementReport& r) {
  return {{"b_max", r.b_max}, {"ratio", r.ratio}, {"error", r.error}, {"reduction", r.reduction}};
}

json to_json(const WeilReport& r) { return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"C", r.C}}; }

json to_json(const FiniteSubgroup& F) {
  json irreps = json::array();
  for (const auto& ir : F.irreps) {
    json chars = json::array();
    for (const auto& cls : F.classes) {
      cplx c = ir.character(cls.front());
      chars.push_back({c.real(), c.imag()});
    }
    irreps.push_back({{"label", ir.label}, {"dim", ir.dim}, {"characters", chars}});
  }
  return {{"kind", to_string(F.kind)}, {"param", F.param}, {"order", F.order()}, {"classes", F.classes},
          {"irreps", irreps}};
}

json to_json(const Generator& g) {
  json slots = json::array();
  for (const auto& s : g.slots)
    slots.push_back({{"label", s.label.index}, {"chi", g.F.irreps[s.chi].label}, {"mu", s.mu}, {"delta", s.delta},
                     {"n", s.n}, {"alpha", s.alpha.str()}, {"support", {s.lo.str(), s.hi.str()}},
                     {"constant", std::abs(s.c)}});
  return {{"id", g.id},   {"d", g.d}, {"L", g.L}, {"subgroup", to_string(g.F.kind)}, {"constant", g.c},
          {"mode", to_string(g.mode)}, {"alpha_tail", g.alpha_tail}, {"norm_sq", g.norm_sq_exact(false)},
          {"slots", slots}};
}

}  // namespace schrolet
