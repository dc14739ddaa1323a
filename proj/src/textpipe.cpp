#include "infocausal/textpipe.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "infocausal/errors.hpp"

namespace infocausal {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

double unit_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text[0] == '-') {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

SymbolString encode_text(std::string_view raw) {
  SymbolString out;
  out.reserve(raw.size());
  bool in_space = false;
  for (char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_space(c)) {
      if (!in_space) out.push_back(kSpaceSymbol);
      in_space = true;
    } else {
      out.push_back(static_cast<Symbol>(c % 9));
      in_space = false;
    }
  }
  return out;
}

Corpus Corpus::from_text(std::string raw) {
  Corpus c;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : raw) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  c.hash = os.str();
  c.symbols = encode_text(raw);
  c.raw = std::move(raw);
  return c;
}

Corpus Corpus::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading corpus '" + path + "'");
  std::string raw = buf.str();
  if (raw.empty()) throw InputError("corpus '" + path + "' is empty");
  return from_text(std::move(raw));
}

LengthRange LengthRange::parse(const std::string& text) {
  const auto sep = text.find_first_of(",-:");
  if (sep == std::string::npos) throw ConfigError("length range must be 'lo,hi': '" + text + "'");
  LengthRange r{parse_size(trim(text.substr(0, sep)), "range bound"),
                parse_size(trim(text.substr(sep + 1)), "range bound")};
  if (r.min == 0 || r.min > r.max) throw ConfigError("invalid length range '" + text + "'");
  return r;
}

std::string LengthRange::to_string() const {
  return std::to_string(min) + "-" + std::to_string(max);
}

SymbolString Segment::slice(const SymbolString& corpus) const {
  if (offset + length > corpus.size()) throw InputError("segment outside corpus");
  return SymbolString(corpus.begin() + static_cast<std::ptrdiff_t>(offset),
                      corpus.begin() + static_cast<std::ptrdiff_t>(offset + length));
}

Segment sample_segment(const SymbolString& corpus, LengthRange range, Rng& rng) {
  if (range.min == 0 || range.min > range.max) throw InputError("invalid length range");
  if (corpus.size() < range.max) {
    throw InputError("corpus has " + std::to_string(corpus.size()) + " symbols, need " +
                     std::to_string(range.max));
  }
  const std::size_t len = uniform_index(rng, range.min, range.max);
  const std::size_t off = uniform_index(rng, 0, corpus.size() - len);
  return {off, len};
}

Segment background_element(const SymbolString& corpus, std::size_t length, Rng& rng) {
  return sample_segment(corpus, {length, length}, rng);
}

PerturbTransformer::PerturbTransformer(double rate) : rate_(rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError("perturb rate must lie in [0, 1]");
}

std::string PerturbTransformer::apply(const std::string& text, Rng& rng) const {
  std::vector<std::string> words;
  std::istringstream is(text);
  for (std::string w; is >> w;) words.push_back(w);
  std::vector<std::string> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (unit_real(rng) >= rate_) {
      out.push_back(words[i]);
      continue;
    }
    switch (uniform_index(rng, 0, 3)) {
      case 0:  // delete
        break;
      case 1:
        out.push_back(words[uniform_index(rng, 0, words.size() - 1)]);
        break;
      case 2: {  // shuffle the letters
        std::string w = words[i];
        for (std::size_t j = w.size(); j > 1; --j) std::swap(w[j - 1], w[uniform_index(rng, 0, j - 1)]);
        out.push_back(w);
        break;
      }
      default:
        if (i + 1 < words.size()) {
          out.push_back(words[i + 1]);
          out.push_back(words[i]);
          ++i;
        } else {
          out.push_back(words[i]);
        }
    }
  }
  std::string joined;
  for (const auto& w : out) {
    if (!joined.empty()) joined += ' ';
    joined += w;
  }
  return joined;
}

ExternalTransformer::ExternalTransformer(std::string command) : command_(std::move(command)) {
  if (trim(command_).empty()) throw ConfigError("external transformer needs a command");
}

std::string ExternalTransformer::apply(const std::string& text, Rng&) const {
  char path[] = "/tmp/infocausal-XXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) throw IoError("cannot create temporary file for external transformer");
  {
    std::ofstream tmp(path, std::ios::binary);
    tmp << text;
  }
  close(fd);
  const std::string cmd = command_ + " < '" + std::string(path) + "'";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::remove(path);
    throw IoError("cannot run '" + command_ + "'");
  }
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  std::remove(path);
  if (status != 0) throw IoError("external transformer '" + command_ + "' failed");
  return out;
}

std::unique_ptr<TextTransformer> make_transformer(
    const std::string& id, const std::map<std::string, std::string>& params) {
  if (id == "identity") return std::make_unique<IdentityTransformer>();
  if (id == "perturb") {
    double rate = 0.3;
    if (auto it = params.find("rate"); it != params.end()) {
      try {
        rate = std::stod(it->second);
      } catch (const std::exception&) {
        throw ConfigError("invalid perturb rate '" + it->second + "'");
      }
    }
    return std::make_unique<PerturbTransformer>(rate);
  }
  if (id == "external") {
    const auto it = params.find("command");
    if (it == params.end()) throw ConfigError("external transformer needs a command");
    return std::make_unique<ExternalTransformer>(it->second);
  }
  throw ConfigError("unknown transformer '" + id + "'");
}

std::vector<SymbolString> build_chain(const ChainSpec& spec) {
  if (spec.k < 1) throw ConfigError("chain length k must be at least 1");
  const auto transformer = make_transformer(spec.transformer, spec.params);
  Rng rng(spec.seed);
  std::vector<SymbolString> chain;
  std::string text = spec.source;
  chain.push_back(encode_text(text));
  for (std::size_t i = 0; i < spec.k; ++i) {
    text = transformer->apply(text, rng);
    chain.push_back(encode_text(text));
  }
  return chain;
}

std::string sample_source_text(const Corpus& corpus, LengthRange range, Rng& rng) {
  if (corpus.symbols.size() < 2 * range.max) throw InputError("corpus too short for source text");
  const std::size_t target = uniform_index(rng, range.min, range.max);
  const std::string& raw = corpus.raw;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::size_t pos = uniform_index(rng, 0, raw.size() - 1);
    // Start at the beginning of a word.
    while (pos < raw.size() && !is_space(static_cast<unsigned char>(raw[pos]))) ++pos;
    while (pos < raw.size() && is_space(static_cast<unsigned char>(raw[pos]))) ++pos;
    std::size_t count = 0, end = pos;
    bool in_space = false;
    while (end < raw.size() && count < target) {
      const bool sp = is_space(static_cast<unsigned char>(raw[end]));
      if (!sp || !in_space) ++count;
      in_space = sp;
      ++end;
    }
    if (count == target) return raw.substr(pos, end - pos);
  }
  throw InputError("could not cut a source text of the requested length");
}

bool SegmentLabel::mentions(std::size_t v) const {
  return std::find(nodes.begin(), nodes.end(), v) != nodes.end();
}

std::string SegmentLabel::name(const std::vector<std::string>& names) const {
  std::string out = "s_";
  for (std::size_t v : nodes) out += v < names.size() ? names[v] : std::to_string(v);
  return out;
}

std::vector<SegmentLabel> segment_labels(const Dag& g) {
  const std::size_t n = g.node_count();
  std::vector<SegmentLabel> out;
  for (std::size_t v = 0; v < n; ++v) out.push_back({{v}});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b)) out.push_back({{a, b}});
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = x + 1; z < n; ++z) {
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z || !g.adjacent(x, y) || !g.adjacent(y, z)) continue;
        if (g.has_edge(x, y) && g.has_edge(z, y)) continue;  // collider
        out.push_back({{x, y, z}});
      }
    }
  }
  return out;
}

namespace {

SegmentLabel canonical(SegmentLabel l) {
  if (l.nodes.size() == 2 && l.nodes[0] > l.nodes[1]) std::swap(l.nodes[0], l.nodes[1]);
  if (l.nodes.size() == 3 && l.nodes[0] > l.nodes[2]) std::swap(l.nodes[0], l.nodes[2]);
  return l;
}

}  // namespace

void validate_labels(const NamedDag& g, const std::vector<SegmentLabel>& labels) {
  const auto required = segment_labels(g.graph);
  std::set<std::vector<std::size_t>> want, have;
  for (const auto& l : required) want.insert(l.nodes);
  std::vector<std::string> problems;
  for (const auto& raw : labels) {
    const SegmentLabel l = canonical(raw);
    if (l.nodes.empty() || l.nodes.size() > 3) {
      problems.push_back("label of size " + std::to_string(l.nodes.size()));
      continue;
    }
    if (!have.insert(l.nodes).second) {
      problems.push_back("duplicate " + l.name(g.names));
    } else if (!want.count(l.nodes)) {
      std::string why = " is not an edge";
      if (l.nodes.size() == 3) {
        const auto [x, y, z] = std::tuple(l.nodes[0], l.nodes[1], l.nodes[2]);
        why = g.graph.adjacent(x, y) && g.graph.adjacent(y, z) ? " is a collider"
                                                               : " is not a path";
      }
      if (l.nodes.size() == 1) why = " names no node";
      problems.push_back(l.name(g.names) + why);
    }
  }
  for (const auto& l : required) {
    if (!have.count(l.nodes)) problems.push_back("missing " + l.name(g.names));
  }
  if (!problems.empty()) {
    std::string msg = "inconsistent segment labels:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InputError(msg);
  }
}

std::vector<SegmentLabel> labels_for_node(const std::vector<SegmentLabel>& labels,
                                          std::size_t v) {
  std::vector<SegmentLabel> out;
  for (const auto& l : labels) {
    if (l.mentions(v)) out.push_back(canonical(l));
  }
  auto key = [](const SegmentLabel& l) {
    const std::size_t size = l.nodes.size();
    if (size == 3) return std::tuple(size, l.nodes[1], l.nodes[0], l.nodes[2]);
    if (size == 2) return std::tuple(size, l.nodes[0], l.nodes[1], std::size_t{0});
    return std::tuple(size, l.nodes[0], std::size_t{0}, std::size_t{0});
  };
  std::sort(out.begin(), out.end(),
            [&](const SegmentLabel& a, const SegmentLabel& b) { return key(a) < key(b); });
  return out;
}

SegmentSpec SegmentSpec::for_graph(NamedDag graph, LengthRange lengths, ConcatOrder order) {
  SegmentSpec spec;
  spec.labels = segment_labels(graph.graph);
  spec.graph = std::move(graph);
  spec.lengths = lengths;
  spec.order = order;
  return spec;
}

FourNodeSample build_fournode(const SegmentSpec& spec, const SymbolString& corpus, Rng& rng,
                              const std::vector<Segment>& exclude) {
  validate_labels(spec.graph, spec.labels);
  constexpr int kMaxAttempts = 10000;
  FourNodeSample sample;
  std::vector<Segment> taken = exclude;
  for (std::size_t i = 0; i < spec.labels.size(); ++i) {
    Segment seg;
    int attempt = 0;
    for (;; ++attempt) {
      if (attempt == kMaxAttempts) throw InputError("corpus too small for disjoint segments");
      seg = sample_segment(corpus, spec.lengths, rng);
      if (std::none_of(taken.begin(), taken.end(),
                       [&](const Segment& t) { return t.overlaps(seg); })) {
        break;
      }
    }
    taken.push_back(seg);
    sample.segments.push_back(seg);
  }

  const std::size_t n = spec.graph.graph.node_count();
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> idx;
    for (const auto& l : labels_for_node(spec.labels, v)) {
      for (std::size_t i = 0; i < spec.labels.size(); ++i) {
        if (canonical(spec.labels[i]) == l) idx.push_back(i);
      }
    }
    if (spec.order == ConcatOrder::kShuffled) {
      for (std::size_t i = idx.size(); i > 1; --i) {
        std::swap(idx[i - 1], idx[uniform_index(rng, 0, i - 1)]);
      }
    }
    SymbolString s;
    for (std::size_t i : idx) {
      const SymbolString part = sample.segments[i].slice(corpus);
      s.insert(s.end(), part.begin(), part.end());
    }
    sample.nodes.push_back(std::move(s));
  }
  return sample;
}

NamedDag reference_graph(char id) {
  std::istringstream in;
  if (id == 'a') {
    in.str("a -> b\na -> c\nb -> d\nc -> d\n");
  } else if (id == 'b') {
    in.str("a -> c\nb -> c\na -> d\nb -> d\n");
  } else {
    throw ConfigError(std::string("unknown reference graph '") + id + "'");
  }
  NamedDag g = parse_dag(in);
  // Keep nodes in alphabetical order regardless of edge listing order.
  std::vector<std::size_t> order(g.names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return g.names[x] < g.names[y]; });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  NamedDag out{Dag(order.size()), {}};
  for (std::size_t i : order) out.names.push_back(g.names[i]);
  for (const auto& [p, c] : g.graph.edges()) out.graph.add_edge(rank[p], rank[c]);
  return out;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse(in);
}

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_size(it->second, key);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != it->second.size()) {
    throw ConfigError("invalid " + key + ": '" + it->second + "'");
  }
  return v;
}

SegmentSpec segment_spec_from_config(const KeyValueConfig& cfg) {
  const std::string graph = cfg.get("graph", "a");
  NamedDag g;
  if (graph.size() == 1) {
    g = reference_graph(graph[0]);
  } else {
    std::string lines = graph;
    std::replace(lines.begin(), lines.end(), ',', '\n');
    std::istringstream in(lines);
    g = parse_dag(in);
  }
  const LengthRange range = LengthRange::parse(cfg.get("nrange", "100,200"));
  const std::string order = cfg.get("order", "sorted");
  if (order != "sorted" && order != "shuffled") {
    throw ConfigError("order must be 'sorted' or 'shuffled'");
  }
  SegmentSpec spec = SegmentSpec::for_graph(
      std::move(g), range, order == "sorted" ? ConcatOrder::kSorted : ConcatOrder::kShuffled);
  if (cfg.has("labels")) {
    std::vector<SegmentLabel> labels;
    std::istringstream in(cfg.get("labels", ""));
    for (std::string tok; in >> tok;) {
      if (tok.rfind("s_", 0) == 0) tok = tok.substr(2);
      SegmentLabel l;
      for (char c : tok) l.nodes.push_back(spec.graph.index_of(std::string(1, c)));
      labels.push_back(std::move(l));
    }
    validate_labels(spec.graph, labels);
    spec.labels = std::move(labels);
  }
  return spec;
}

ChainSpec chain_spec_from_config(const KeyValueConfig& cfg) {
  ChainSpec spec;
  if (cfg.has("source")) {
    const std::string path = cfg.get("source", "");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open source text '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    spec.source = buf.str();
  }
  spec.k = cfg.get_u64("k", 3);
  if (spec.k < 1) throw ConfigError("chain length k must be at least 1");
  spec.transformer = cfg.get("transformer", "perturb");
  spec.params.clear();
  if (cfg.has("rate")) spec.params["rate"] = cfg.get("rate", "");
  if (cfg.has("command")) spec.params["command"] = cfg.get("command", "");
  spec.seed = cfg.get_u64("seed", 1);
  make_transformer(spec.transformer, spec.params);  // validate early
  return spec;
}

}  // namespace infocausal
