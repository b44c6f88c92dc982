#include "polycensus/permgrp/catalog.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace polycensus::permgrp {

namespace detail {
extern const std::string_view kCatalogText;
}

namespace {

constexpr std::string_view kMagic = "polycensus-transitive-catalog";

bool has_element_of_order(const PermGroup& g, int k) {
  return std::any_of(g.elements().begin(), g.elements().end(), [k](const Permutation& p) { return p.order() == k; });
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

std::pair<std::string, std::string> transitive_group_label(const PermGroup& g) {
  const int n = g.degree();
  const long o = g.order();
  const bool has4 = has_element_of_order(g, 4), has6 = has_element_of_order(g, 6);
  auto sym = [](int k) { return std::pair{"S_" + std::to_string(k), "S" + std::to_string(k)}; };
  auto alt = [](int k) { return std::pair{"A_" + std::to_string(k), "A" + std::to_string(k)}; };
  switch (n) {
    case 2:
      return {"C_2", "C2"};
    case 3:
      return o == 3 ? std::pair<std::string, std::string>{"C_3", "C3"} : sym(3);
    case 4:
      switch (o) {
        case 4: return has4 ? std::pair<std::string, std::string>{"C_4", "C4"} : std::pair<std::string, std::string>{"V_4", "C2xC2"};
        case 8: return {"D_4", "D4"};
        case 12: return alt(4);
        case 24: return sym(4);
      }
      break;
    case 5:
      switch (o) {
        case 5: return {"C_5", "C5"};
        case 10: return {"D_5", "D5"};
        case 20: return {"F_20", "C5:C4"};
        case 60: return alt(5);
        case 120: return sym(5);
      }
      break;
    case 6:
      switch (o) {
        case 6: return has6 ? std::pair<std::string, std::string>{"C_6", "C6"} : std::pair<std::string, std::string>{"S_3(6)", "S3"};
        case 12: return has6 ? std::pair<std::string, std::string>{"D_6(6)", "D6"} : std::pair<std::string, std::string>{"A_4(6)", "A4"};
        case 18: return {"F_18(6)", "S3xC3"};
        case 24:
          if (!has4) return {"2A_4(6)", "A4xC2"};
          return g.is_even() ? std::pair<std::string, std::string>{"S_4+(6)", "S4"} : std::pair<std::string, std::string>{"S_4-(6)", "S4"};
        case 36: return has4 ? std::pair<std::string, std::string>{"F_36(6)", "C3^2:C4"} : std::pair<std::string, std::string>{"F_18:2(6)", "S3xS3"};
        case 48: return {"2S_4(6)", "S4xC2"};
        case 60: return {"PSL(2,5)", "A5"};
        case 72: return {"F_36:2(6)", "C3^2:D4"};
        case 120: return {"PGL(2,5)", "S5"};
        case 360: return alt(6);
        case 720: return sym(6);
      }
      break;
  }
  throw std::invalid_argument("not a transitive group of degree 2..6 with a known label");
}

CatalogEntry make_catalog_entry(const std::vector<Permutation>& gens) {
  PermGroup g = generate(gens);
  auto [name, abstract] = transitive_group_label(g);
  bool prim = is_primitive(g);
  Distribution dist = cycle_type_distribution(g);
  g.set_name(name);
  return CatalogEntry{std::move(g), std::move(name), std::move(abstract), prim, std::move(dist)};
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<CatalogEntry> out;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string magic;
      int version = 0;
      ls >> magic >> version;
      if (magic != kMagic || version != kCatalogVersion)
        throw std::runtime_error("catalog: unsupported header on line " + std::to_string(lineno));
      header = true;
      continue;
    }
    int degree = 0, primitive = 0;
    long order = 0;
    std::string name, abstract, gens_text, dist_text;
    if (!(ls >> degree >> name >> abstract >> order >> primitive >> gens_text >> dist_text))
      throw std::runtime_error("catalog: malformed record on line " + std::to_string(lineno));
    std::vector<Permutation> gens;
    for (const auto& w : split(gens_text, ',')) gens.push_back(Permutation::from_word(w));
    CatalogEntry e = make_catalog_entry(gens);
    Distribution dist;
    for (const auto& item : split(dist_text, ';')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw std::runtime_error("catalog: bad distribution on line " + std::to_string(lineno));
      mpq_class q(item.substr(eq + 1));
      q.canonicalize();
      dist.emplace(CycleType::parse(item.substr(0, eq)), q);
    }
    if (e.degree() != degree || e.order() != order || e.name != name || e.abstract_name != abstract ||
        e.primitive != (primitive != 0) || e.distribution != dist)
      throw std::runtime_error("catalog: record on line " + std::to_string(lineno) + " is inconsistent with its generators");
    out.push_back(std::move(e));
  }
  if (!header) throw std::runtime_error("catalog: missing header");
  return out;
}

std::string format_catalog(const std::vector<CatalogEntry>& entries) {
  std::ostringstream os;
  os << kMagic << ' ' << kCatalogVersion << '\n';
  os << "# degree name abstract order primitive generators distribution\n";
  for (const auto& e : entries) {
    os << e.degree() << ' ' << e.name << ' ' << e.abstract_name << ' ' << e.order() << ' ' << (e.primitive ? 1 : 0) << ' ';
    for (std::size_t i = 0; i < e.group.generators().size(); ++i) os << (i ? "," : "") << e.group.generators()[i].word();
    os << ' ';
    bool first = true;
    for (const auto& [t, q] : e.distribution) {
      os << (first ? "" : ";") << t.to_string() << '=' << q.get_str();
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

const std::vector<CatalogEntry>& transitive_catalog(int n) {
  static std::once_flag once;
  static std::array<std::vector<CatalogEntry>, kCatalogMaxDegree + 1> by_degree;
  std::call_once(once, [] {
    for (auto& e : parse_catalog(detail::kCatalogText)) by_degree[static_cast<std::size_t>(e.degree())].push_back(std::move(e));
  });
  if (n < 2 || n > kCatalogMaxDegree) throw std::out_of_range("catalog degree must be in [2, 6]");
  return by_degree[static_cast<std::size_t>(n)];
}

const CatalogEntry* find_catalog_entry(std::string_view name) {
  for (int n = 2; n <= kCatalogMaxDegree; ++n)
    for (const auto& e : transitive_catalog(n))
      if (e.name == name) return &e;
  return nullptr;
}

}  // namespace polycensus::permgrp
