// Circuit text format:
//
//   majcirc 1
//   n <int> k <int> depth <int>
//   gate <layer>:<id> theta <int> : <ref>*<weight> ...
//   top g<depth>:<id>
//
// ref is x<i> for layer-1 gates and g<layer-1>:<id> above. '#' starts a comment.

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/circuit.hpp"
#include "core/error.hpp"

namespace majcirc {

namespace {

std::string ref_text(Ref r) {
  if (r.is_variable()) return "x" + std::to_string(r.id);
  return "g" + std::to_string(r.layer) + ":" + std::to_string(r.id);
}

template <class Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool parse_layer_id(std::string_view s, std::uint32_t& layer, std::uint32_t& id) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos) return false;
  return parse_int(s.substr(0, colon), layer) && parse_int(s.substr(colon + 1), id);
}

struct GateLine {
  std::size_t line;
  ThresholdGate gate;
};

}  // namespace

std::string serialize(const LayeredCircuit& c) {
  std::ostringstream out;
  out << "majcirc 1\n";
  out << "n " << c.n() << " k " << c.k() << " depth " << c.depth() << "\n";
  for (std::uint32_t l = 1; l <= c.depth(); ++l) {
    const auto& gates = c.layer(l);
    for (std::uint32_t id = 1; id <= gates.size(); ++id) {
      const auto& g = gates[id - 1];
      out << "gate " << l << ":" << id << " theta " << g.theta << " :";
      for (const auto& in : g.inputs) out << " " << ref_text(in.ref) << "*" << in.weight;
      out << "\n";
    }
  }
  out << "top g" << c.top().layer << ":" << c.top().id << "\n";
  return out.str();
}

LayeredCircuit parse(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  {
    std::size_t start = 0, number = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!split_ws(line).empty()) lines.emplace_back(number, line);
      if (end == text.size()) break;
      start = end + 1;
    }
  }
  if (lines.empty()) throw Error(ErrorKind::structure, "empty circuit text");

  std::size_t idx = 0;
  {
    auto t = split_ws(lines[idx].second);
    if (t.size() != 2 || t[0] != "majcirc" || t[1] != "1")
      throw ParseError(lines[idx].first, "expected header 'majcirc 1'");
    ++idx;
  }

  std::uint32_t n = 0, depth = 0;
  std::int64_t k = 0;
  {
    if (idx >= lines.size()) throw ParseError(lines.back().first, "missing 'n <int> k <int> depth <int>' line");
    auto t = split_ws(lines[idx].second);
    if (t.size() != 6 || t[0] != "n" || t[2] != "k" || t[4] != "depth" || !parse_int(t[1], n) ||
        !parse_int(t[3], k) || !parse_int(t[5], depth))
      throw ParseError(lines[idx].first, "expected 'n <int> k <int> depth <int>'");
    if (n < 1) throw ParseError(lines[idx].first, "n must be positive");
    if (k < 1) throw ParseError(lines[idx].first, "k must be positive");
    if (depth < 1 || depth > LayeredCircuit::kMaxDepth) throw ParseError(lines[idx].first, "depth must be 1, 2 or 3");
    ++idx;
  }

  std::vector<std::map<std::uint32_t, GateLine>> gates(depth);
  std::optional<GateId> top;
  std::size_t top_line = 0;

  for (; idx < lines.size(); ++idx) {
    const std::size_t ln = lines[idx].first;
    auto t = split_ws(lines[idx].second);
    if (top) throw ParseError(ln, "content after the 'top' line");

    if (t[0] == "top") {
      std::uint32_t layer = 0, id = 0;
      if (t.size() != 2 || t[1].size() < 2 || t[1][0] != 'g' || !parse_layer_id(t[1].substr(1), layer, id))
        throw ParseError(ln, "expected 'top g<layer>:<id>'");
      top = GateId{layer, id};
      top_line = ln;
      continue;
    }
    if (t[0] != "gate") throw ParseError(ln, "unknown directive '" + std::string(t[0]) + "'");
    std::uint32_t layer = 0, id = 0;
    if (t.size() < 5 || !parse_layer_id(t[1], layer, id) || t[2] != "theta" || t[4] != ":")
      throw ParseError(ln, "expected 'gate <layer>:<id> theta <int> : <ref>*<weight> ...'");
    if (layer < 1 || layer > depth) throw ParseError(ln, "gate layer outside 1..depth");
    if (id < 1) throw ParseError(ln, "gate ids start at 1");
    ThresholdGate g;
    if (!parse_int(t[3], g.theta)) throw ParseError(ln, "bad theta '" + std::string(t[3]) + "'");

    std::set<Ref> seen;
    std::int64_t fan_in = 0;
    for (std::size_t i = 5; i < t.size(); ++i) {
      const std::string_view tok = t[i];
      const auto star = tok.find('*');
      if (star == std::string_view::npos) throw ParseError(ln, "input '" + std::string(tok) + "' lacks '*<weight>'");
      const std::string_view ref_s = tok.substr(0, star);
      WeightedInput in;
      if (!parse_int(tok.substr(star + 1), in.weight) || in.weight < 1)
        throw ParseError(ln, "bad weight in '" + std::string(tok) + "'");
      if (ref_s.size() >= 2 && ref_s[0] == 'x') {
        std::uint32_t v = 0;
        if (!parse_int(ref_s.substr(1), v)) throw ParseError(ln, "bad variable reference '" + std::string(ref_s) + "'");
        if (layer != 1) throw ParseError(ln, "variables may only feed layer 1");
        if (v < 1 || v > n) throw ParseError(ln, "dangling reference '" + std::string(ref_s) + "'");
        in.ref = Ref::var(v);
      } else if (ref_s.size() >= 2 && ref_s[0] == 'g') {
        std::uint32_t rl = 0, rid = 0;
        if (!parse_layer_id(ref_s.substr(1), rl, rid))
          throw ParseError(ln, "bad gate reference '" + std::string(ref_s) + "'");
        if (rl + 1 != layer) throw ParseError(ln, "reference '" + std::string(ref_s) + "' skips a layer");
        in.ref = Ref::gate(rl, rid);
      } else {
        throw ParseError(ln, "bad reference '" + std::string(ref_s) + "'");
      }
      if (!seen.insert(in.ref).second) throw ParseError(ln, "duplicated reference '" + std::string(ref_s) + "'");
      if (__builtin_add_overflow(fan_in, in.weight, &fan_in)) throw ParseError(ln, "weight sum overflows");
      g.inputs.push_back(in);
    }
    if (fan_in > k)
      throw ParseError(ln, "fan-in " + std::to_string(fan_in) + " exceeds k = " + std::to_string(k));
    if (!gates[layer - 1].emplace(id, GateLine{ln, std::move(g)}).second)
      throw ParseError(ln, "duplicate gate id " + std::to_string(layer) + ":" + std::to_string(id));
  }

  if (!top) throw ParseError(lines.back().first, "missing 'top g<layer>:<id>' line");

  std::vector<std::vector<ThresholdGate>> layers(depth);
  for (std::uint32_t l = 1; l <= depth; ++l) {
    const auto& m = gates[l - 1];
    if (m.empty()) throw ParseError(lines.back().first, "layer " + std::to_string(l) + " has no gates");
    std::uint32_t expect = 1;
    for (const auto& [id, gl] : m) {
      if (id != expect)
        throw ParseError(gl.line, "gate ids in layer " + std::to_string(l) + " must be 1.." + std::to_string(m.size()));
      ++expect;
    }
    for (const auto& [id, gl] : m) {
      if (l > 1) {
        for (const auto& in : gl.gate.inputs)
          if (in.ref.id < 1 || in.ref.id > gates[l - 2].size())
            throw ParseError(gl.line, "dangling reference " + ref_text(in.ref));
      }
      layers[l - 1].push_back(gl.gate);
    }
  }
  if (top->layer != depth || top->id < 1 || top->id > layers[depth - 1].size())
    throw ParseError(top_line, "top must name a gate in layer " + std::to_string(depth));

  return LayeredCircuit(n, k, std::move(layers), *top);
}

}  // namespace majcirc
