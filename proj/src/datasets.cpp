#include "herder/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "herder/rng.hpp"

namespace herder {

namespace {

// Line-oriented tokenizer that tracks the current line number for errors.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split into whitespace tokens.
  std::vector<std::string> next_tokens() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      std::string token;
      while (ss >> token) tokens.push_back(token);
      if (!tokens.empty()) return tokens;
    }
    throw ParseError("unexpected end of input", line_);
  }

  bool at_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      std::istringstream ss(line);
      std::string token;
      if (ss >> token) return false;
    }
    return true;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::int64_t parse_int(const std::string& token, std::size_t line) {
  std::int64_t value = 0;
  const auto* begin = token.data();
  const auto* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("expected integer, got '" + token + "'", line);
  return value;
}

std::size_t parse_count(const std::string& token, std::size_t line) {
  const std::int64_t value = parse_int(token, line);
  if (value < 0) throw ParseError("expected non-negative integer", line);
  return static_cast<std::size_t>(value);
}

double parse_decimal(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError("expected decimal, got '" + token + "'", line);
  }
}

// Keyword line of the shape "<keyword> <value>".
std::string expect_field(LineReader& reader, const std::string& keyword) {
  const auto tokens = reader.next_tokens();
  if (tokens.size() != 2 || tokens[0] != keyword)
    throw ParseError("expected '" + keyword + " <value>'", reader.line());
  return tokens[1];
}

std::vector<std::int64_t> expect_values(LineReader& reader, std::size_t count,
                                        const char* what) {
  const auto tokens = reader.next_tokens();
  if (tokens.size() != count)
    throw ParseError("expected " + std::to_string(count) + " " + what + ", got " +
                         std::to_string(tokens.size()),
                     reader.line());
  std::vector<std::int64_t> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = parse_int(tokens[i], reader.line());
    if (values[i] < 0) throw ParseError("negative value", reader.line());
  }
  return values;
}

}  // namespace

DmkpInstance parse_dmkp(std::istream& in) {
  LineReader reader(in);

  const auto magic = reader.next_tokens();
  if (magic.size() != 2 || magic[0] != "DMKP" || magic[1] != "1")
    throw ParseError("expected header 'DMKP 1'", reader.line());

  DmkpInstance instance;
  instance.name = expect_field(reader, "name");
  const std::size_t delta_line = reader.line() + 1;
  instance.delta = parse_decimal(expect_field(reader, "delta"), delta_line);
  if (instance.delta < 0.0 || instance.delta > 1.0)
    throw ParseError("delta outside [0,1]", delta_line);
  const std::size_t state_count =
      parse_count(expect_field(reader, "states"), reader.line());
  if (state_count == 0) throw ParseError("states must be >= 1", reader.line());
  const std::size_t n = parse_count(expect_field(reader, "items"), reader.line());
  const std::size_t m = parse_count(expect_field(reader, "knapsacks"), reader.line());
  if (n < 1) throw ParseError("items must be >= 1", reader.line());
  if (m < 1) throw ParseError("knapsacks must be >= 1", reader.line());

  instance.states.reserve(state_count);
  for (std::size_t s = 0; s < state_count; ++s) {
    const auto header = reader.next_tokens();
    if (header.size() != 2 || header[0] != "state")
      throw ParseError("expected 'state " + std::to_string(s) + "'", reader.line());
    if (parse_count(header[1], reader.line()) != s)
      throw ParseError("state indices must be contiguous; expected " +
                           std::to_string(s) + ", got " + header[1],
                       reader.line());

    MkpState state;
    state.state_index = s;
    state.n = n;
    state.m = m;
    state.profits = expect_values(reader, n, "profits");
    state.weights.reserve(m);
    for (std::size_t k = 0; k < m; ++k)
      state.weights.push_back(expect_values(reader, n, "weights"));
    state.capacities = expect_values(reader, m, "capacities");
    instance.states.push_back(std::move(state));
  }

  if (!reader.at_end())
    throw ParseError("trailing content after final state", reader.line());

  instance.validate();
  return instance;
}

DmkpInstance load_dmkp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path);
  return parse_dmkp(in);
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_dmkp(const DmkpInstance& instance, std::ostream& out) {
  instance.validate();
  out << "DMKP 1\n";
  out << "name " << instance.name << "\n";
  out << "delta " << format_double(instance.delta) << "\n";
  out << "states " << instance.states.size() << "\n";
  out << "items " << instance.item_count() << "\n";
  out << "knapsacks " << instance.knapsack_count() << "\n";
  for (const auto& state : instance.states) {
    out << "state " << state.state_index << "\n";
    for (std::size_t i = 0; i < state.n; ++i)
      out << state.profits[i] << (i + 1 < state.n ? ' ' : '\n');
    for (const auto& row : state.weights) {
      for (std::size_t i = 0; i < state.n; ++i)
        out << row[i] << (i + 1 < state.n ? ' ' : '\n');
    }
    for (std::size_t k = 0; k < state.m; ++k)
      out << state.capacities[k] << (k + 1 < state.m ? ' ' : '\n');
  }
}

std::string write_dmkp_string(const DmkpInstance& instance) {
  std::ostringstream out;
  write_dmkp(instance, out);
  return out.str();
}

void save_dmkp_file(const DmkpInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  write_dmkp(instance, out);
}

namespace {

std::int64_t perturb_value(std::int64_t value, double delta, std::int64_t floor,
                           Rng& rng) {
  const double factor = rng.next_double(1.0 - delta, 1.0 + delta);
  const double scaled = static_cast<double>(value) * factor;
  return std::max(floor, static_cast<std::int64_t>(std::llround(scaled)));
}

}  // namespace

DmkpInstance generate_dmkp(const MkpState& base, double delta,
                           std::size_t num_changes, std::uint64_t seed,
                           std::string name) {
  if (delta < 0.0 || delta > 1.0) throw ParameterError("delta outside [0,1]");
  base.validate();

  DmkpInstance instance;
  if (name.empty()) {
    std::ostringstream auto_name;
    auto_name << "gen-n" << base.n << "-m" << base.m << "-S" << num_changes << "-d"
              << format_double(delta) << "-s" << seed;
    name = auto_name.str();
  }
  instance.name = std::move(name);
  instance.delta = delta;
  instance.states.reserve(num_changes + 1);

  MkpState state = base;
  state.state_index = 0;
  instance.states.push_back(state);

  Rng rng = Rng::stream(seed, 0x444d4b50ULL);  // dataset-generation stream
  for (std::size_t s = 1; s <= num_changes; ++s) {
    MkpState next = instance.states.back();
    next.state_index = s;
    for (auto& p : next.profits) p = perturb_value(p, delta, 1, rng);
    for (auto& row : next.weights)
      for (auto& w : row) w = perturb_value(w, delta, 0, rng);
    for (auto& c : next.capacities) c = perturb_value(c, delta, 1, rng);
    instance.states.push_back(std::move(next));
  }

  instance.validate();
  return instance;
}

std::map<std::size_t, std::int64_t> load_best_known(std::istream& in) {
  std::map<std::size_t, std::int64_t> best_known;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string index_token, profit_token, extra;
    if (!(ss >> index_token)) continue;  // blank or comment-only line
    if (!(ss >> profit_token) || (ss >> extra))
      throw ParseError("expected '<state_index> <profit>'", line_no);
    const std::size_t index = parse_count(index_token, line_no);
    const std::int64_t profit = parse_int(profit_token, line_no);
    if (best_known.contains(index))
      throw ParseError("duplicate state index " + index_token, line_no);
    best_known[index] = profit;
  }
  return best_known;
}

std::map<std::size_t, std::int64_t> load_best_known_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open best-known file: " + path);
  return load_best_known(in);
}

void write_best_known(const std::map<std::size_t, std::int64_t>& best_known,
                      std::ostream& out, const std::string& header_comment) {
  if (!header_comment.empty()) {
    std::istringstream ss(header_comment);
    std::string line;
    while (std::getline(ss, line)) out << "# " << line << "\n";
  }
  for (const auto& [index, profit] : best_known) out << index << " " << profit << "\n";
}

void save_best_known_file(const std::map<std::size_t, std::int64_t>& best_known,
                          const std::string& path,
                          const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write best-known file: " + path);
  write_best_known(best_known, out, header_comment);
}

}  // namespace herder
