#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "catmouse/engine.hpp"
#include "catmouse/graph.hpp"

namespace catmouse {

// Text format: first line "n", then n-1 lines "u v" with 0-based ids. Blank
// lines are skipped. Malformed input (including cycles and disconnection)
// raises std::invalid_argument with a source-tagged diagnostic.
Tree read_tree(std::istream& in, const std::string& source = "<input>");
Tree read_tree_file(const std::string& path);

void write_tree(std::ostream& out, const Tree& t);
void write_tree_file(const std::string& path, const Tree& t);

// DOT subset for visual inspection; highlighted vertices are filled.
std::string to_dot(const Tree& t, const std::vector<int>& highlight = {});

// JSON with fixed key order and no timestamps, so reruns are byte-identical.
std::string tree_json(const Tree& t);
std::string subdivided_json(const SubdividedTree& st);

// {"r", "semantics" ("paper"|"shoot_then_move"),
//  "initial_domain" ("all"|"class1"), "rounds"}.
std::string schedule_json(const Schedule& s, const GameSemantics& sem);

// Missing semantics fields default to {"paper", "all"}.
// When sem is non-null it receives the parsed semantics.
Schedule schedule_from_json(const std::string& text, GameSemantics* sem = nullptr);

std::string convention_name(Convention c);
std::string initial_domain_name(InitialDomain d);
// Accepts "paper" and "stm"/"shoot_then_move" (resp. "all" and "class1").
Convention parse_convention(const std::string& s);
InitialDomain parse_initial_domain(const std::string& s);

// One line per entry: "round i: shot={...} A={...} (|A|=s)".
std::string format_trace(const GameTrace& trace);

}  // namespace catmouse
