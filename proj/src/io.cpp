#include "catmouse/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace catmouse {

namespace {

using ordered_json = nlohmann::ordered_json;

std::invalid_argument parse_error(const std::string& source, int line,
                                  const std::string& msg) {
  return std::invalid_argument(source + ":" + std::to_string(line) + ": " + msg);
}

ordered_json tree_to_json(const Tree& t) {
  ordered_json j;
  j["n"] = t.n();
  ordered_json adj = ordered_json::array();
  for (int v = 0; v < t.n(); ++v) adj.push_back(t.neighbors(v));
  j["adjacency"] = std::move(adj);
  return j;
}

void append_set(std::ostringstream& out, const std::vector<int>& vs) {
  out << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out << ',';
    out << vs[i];
  }
  out << '}';
}

}  // namespace

Tree read_tree(std::istream& in, const std::string& source) {
  std::string buf;
  int lineno = 0;
  const auto next_line = [&]() {
    while (std::getline(in, buf)) {
      ++lineno;
      if (buf.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw parse_error(source, lineno, "missing vertex count");
  int n = 0;
  {
    std::istringstream ls(buf);
    std::string extra;
    if (!(ls >> n)) throw parse_error(source, lineno, "cannot parse vertex count");
    if (ls >> extra) throw parse_error(source, lineno, "trailing tokens after vertex count");
  }
  if (n < 1) throw parse_error(source, lineno, "vertex count must be at least 1");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    if (!next_line())
      throw parse_error(source, lineno,
                        "expected " + std::to_string(n - 1) + " edges, file ends after " +
                            std::to_string(i));
    std::istringstream ls(buf);
    int u = 0;
    int v = 0;
    std::string extra;
    if (!(ls >> u >> v)) throw parse_error(source, lineno, "cannot parse edge (need \"u v\")");
    if (ls >> extra) throw parse_error(source, lineno, "trailing tokens after edge");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw parse_error(source, lineno,
                        "vertex id out of range [0, " + std::to_string(n) + ")");
    edges.emplace_back(u, v);
  }
  if (next_line()) throw parse_error(source, lineno, "unexpected content after the edge list");

  try {
    return Tree(n, edges);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(source + ": " + e.what());
  }
}

Tree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tree file: " + path);
  return read_tree(in, path);
}

void write_tree(std::ostream& out, const Tree& t) {
  out << t.n() << "\n";
  for (const auto& [u, v] : t.edges()) out << u << " " << v << "\n";
}

void write_tree_file(const std::string& path, const Tree& t) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_tree(out, t);
}

std::string to_dot(const Tree& t, const std::vector<int>& highlight) {
  std::ostringstream out;
  out << "graph tree {\n  node [shape=circle];\n";
  for (int v : highlight) out << "  " << v << " [style=filled, fillcolor=lightblue];\n";
  for (const auto& [u, v] : t.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string tree_json(const Tree& t) { return tree_to_json(t).dump(); }

std::string subdivided_json(const SubdividedTree& st) {
  ordered_json j;
  j["tree"] = tree_to_json(st.tree);
  j["k"] = st.k;
  ordered_json imp = ordered_json::array();
  for (char f : st.important) imp.push_back(f ? 1 : 0);
  j["important"] = std::move(imp);
  j["b_map"] = st.b_map;
  return j.dump();
}

std::string convention_name(Convention c) {
  return c == Convention::MoveThenShoot ? "paper" : "shoot_then_move";
}

std::string initial_domain_name(InitialDomain d) {
  return d == InitialDomain::AllVertices ? "all" : "class1";
}

Convention parse_convention(const std::string& s) {
  if (s == "paper") return Convention::MoveThenShoot;
  if (s == "stm" || s == "shoot_then_move") return Convention::ShootThenMove;
  throw std::invalid_argument("unknown semantics \"" + s + "\" (expected paper|stm)");
}

InitialDomain parse_initial_domain(const std::string& s) {
  if (s == "all") return InitialDomain::AllVertices;
  if (s == "class1") return InitialDomain::ClassOne;
  throw std::invalid_argument("unknown initial domain \"" + s + "\" (expected all|class1)");
}

std::string schedule_json(const Schedule& s, const GameSemantics& sem) {
  ordered_json j;
  j["r"] = s.r;
  j["semantics"] = convention_name(sem.convention);
  j["initial_domain"] = initial_domain_name(sem.initial_domain);
  j["rounds"] = s.rounds;
  return j.dump();
}

Schedule schedule_from_json(const std::string& text, GameSemantics* sem) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("schedule JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw std::invalid_argument("schedule JSON: not an object");
    Schedule s;
    s.r = j.at("r").get<int>();
    if (s.r < 1) throw std::invalid_argument("schedule JSON: r must be at least 1");
    GameSemantics g;
    if (j.contains("semantics"))
      g.convention = parse_convention(j.at("semantics").get<std::string>());
    if (j.contains("initial_domain"))
      g.initial_domain = parse_initial_domain(j.at("initial_domain").get<std::string>());
    for (const auto& round : j.at("rounds")) {
      std::vector<int> shot = round.get<std::vector<int>>();
      if (static_cast<int>(shot.size()) > s.r)
        throw std::invalid_argument("schedule JSON: round larger than r");
      for (int v : shot)
        if (v < 0) throw std::invalid_argument("schedule JSON: negative vertex id");
      s.rounds.push_back(std::move(shot));
    }
    if (sem) *sem = g;
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("schedule JSON: ") + e.what());
  }
}

std::string format_trace(const GameTrace& trace) {
  std::ostringstream out;
  for (const TraceEntry& e : trace.entries) {
    out << "round " << e.round << ": shot=";
    append_set(out, e.shot);
    out << " A=";
    append_set(out, e.positions);
    out << " (|A|=" << e.positions.size() << ")\n";
  }
  return out.str();
}

}  // namespace catmouse
