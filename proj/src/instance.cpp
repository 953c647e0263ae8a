#include "ccknap/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "ccknap/rng.hpp"

namespace ccknap {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
  std::ostringstream out;
  out << "line " << line << ": " << message;
  throw std::runtime_error(out.str());
}

}  // namespace

void validate(const DetInstance& det) {
  if (det.n < 1) fail("instance must have at least one item");
  if (static_cast<int>(det.profits.size()) != det.n ||
      static_cast<int>(det.weights.size()) != det.n)
    fail("profits and weights must have exactly n entries");
  for (int i = 0; i < det.n; ++i) {
    if (det.profits[static_cast<std::size_t>(i)] < 1)
      fail("profits must be positive");
    if (det.weights[static_cast<std::size_t>(i)] < 1)
      fail("weights must be positive");
  }
  if (det.capacity < 1) fail("capacity must be positive");
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::deterministic: return "deterministic";
    case ModelKind::uniform_additive: return "uniform_additive";
    case ModelKind::uniform_relative: return "uniform_relative";
    case ModelKind::normal: return "normal";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "deterministic") return ModelKind::deterministic;
  if (name == "uniform_additive") return ModelKind::uniform_additive;
  if (name == "uniform_relative") return ModelKind::uniform_relative;
  if (name == "normal") return ModelKind::normal;
  fail("unknown weight model: " + name);
}

WeightModel WeightModel::deterministic() { return WeightModel{}; }

WeightModel WeightModel::uniform_additive(double delta) {
  WeightModel m;
  m.kind = ModelKind::uniform_additive;
  m.delta = delta;
  return m;
}

WeightModel WeightModel::uniform_relative(double beta) {
  WeightModel m;
  m.kind = ModelKind::uniform_relative;
  m.beta = beta;
  return m;
}

WeightModel WeightModel::normal(std::vector<double> variances) {
  WeightModel m;
  m.kind = ModelKind::normal;
  m.variances = std::move(variances);
  return m;
}

void validate(const CCInstance& inst) {
  if (inst.n < 1) fail("instance must have at least one item");
  if (static_cast<int>(inst.profits.size()) != inst.n)
    fail("profits must have exactly n entries");
  if (static_cast<int>(inst.expected_weights.size()) != inst.n)
    fail("expected_weights must have exactly n entries");
  for (int i = 0; i < inst.n; ++i) {
    if (inst.profits[static_cast<std::size_t>(i)] < 1)
      fail("profits must be positive");
    if (inst.expected_weights[static_cast<std::size_t>(i)] <= 0.0)
      fail("expected weights must be positive");
  }
  if (inst.capacity <= 0.0) fail("capacity must be positive");
  if (!(inst.alpha > 0.0 && inst.alpha <= 1.0))
    fail("alpha must lie in (0, 1]");

  const double min_weight = *std::min_element(inst.expected_weights.begin(),
                                              inst.expected_weights.end());
  switch (inst.model.kind) {
    case ModelKind::deterministic:
      break;
    case ModelKind::uniform_additive:
      if (inst.model.delta < 0.0) fail("delta must be nonnegative");
      if (inst.model.delta >= min_weight)
        fail("delta must be smaller than the smallest expected weight");
      break;
    case ModelKind::uniform_relative:
      if (!(inst.model.beta >= 0.0 && inst.model.beta < 1.0))
        fail("beta must lie in [0, 1)");
      break;
    case ModelKind::normal:
      if (static_cast<int>(inst.model.variances.size()) != inst.n)
        fail("normal model needs one variance per item");
      for (double v : inst.model.variances)
        if (v < 0.0) fail("variances must be nonnegative");
      break;
  }
}

double item_variance(const CCInstance& inst, int i) {
  switch (inst.model.kind) {
    case ModelKind::deterministic:
      return 0.0;
    case ModelKind::uniform_additive:
      // uniform on an interval of width 2*delta: (2*delta)^2 / 12
      return inst.model.delta * inst.model.delta / 3.0;
    case ModelKind::uniform_relative: {
      const double a = inst.expected_weights[static_cast<std::size_t>(i)];
      return inst.model.beta * inst.model.beta * a * a / 3.0;
    }
    case ModelKind::normal:
      return inst.model.variances[static_cast<std::size_t>(i)];
  }
  return 0.0;
}

int Solution::count() const {
  int c = 0;
  for (std::uint8_t b : bits) c += b;
  return c;
}

std::string Solution::to_string() const {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i] = '1';
  return out;
}

Solution Solution::from_string(const std::string& text) {
  Solution x(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      x.bits[i] = 1;
    else if (text[i] != '0')
      fail("solution strings may only contain 0 and 1");
  }
  return x;
}

namespace {

// Nonempty lines of the file together with their 1-based line numbers.
std::vector<std::pair<int, std::string>> nonempty_lines(
    const std::string& text) {
  std::vector<std::pair<int, std::string>> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string line = text.substr(
        pos, end == std::string::npos ? std::string::npos : end - pos);
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos)
      lines.emplace_back(number, std::move(line));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return lines;
}

long long parse_integer(const std::string& token, int line, const char* what) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    parse_fail(line, std::string("expected integer ") + what + ", got \"" +
                         token + "\"");
  return value;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

DetInstance parse_instance(const std::string& text) {
  const auto lines = nonempty_lines(text);
  if (lines.empty()) parse_fail(1, "empty instance file");

  const auto header = split_tokens(lines[0].second);
  if (header.size() != 1)
    parse_fail(lines[0].first, "expected item count alone on the first line");
  const long long n = parse_integer(header[0], lines[0].first, "item count");
  if (n < 1) parse_fail(lines[0].first, "item count must be positive");

  const long long found = static_cast<long long>(lines.size()) - 2;
  if (found != n) {
    std::ostringstream out;
    out << "expected " << n << " item lines, found " << std::max(found, 0LL);
    parse_fail(lines.back().first, out.str());
  }

  DetInstance det;
  det.n = static_cast<int>(n);
  det.profits.reserve(static_cast<std::size_t>(n));
  det.weights.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const auto& [line_no, line] = lines[static_cast<std::size_t>(i) + 1];
    const auto tokens = split_tokens(line);
    if (tokens.size() != 2)
      parse_fail(line_no, "expected \"profit weight\" pair");
    const long long p = parse_integer(tokens[0], line_no, "profit");
    const long long w = parse_integer(tokens[1], line_no, "weight");
    if (p < 1) parse_fail(line_no, "profit must be positive");
    if (w < 1) parse_fail(line_no, "weight must be positive");
    det.profits.push_back(p);
    det.weights.push_back(w);
  }

  const auto& [cap_line, cap_text] = lines.back();
  const auto cap_tokens = split_tokens(cap_text);
  if (cap_tokens.size() != 1)
    parse_fail(cap_line, "expected capacity alone on the last line");
  det.capacity = parse_integer(cap_tokens[0], cap_line, "capacity");
  if (det.capacity < 1) parse_fail(cap_line, "capacity must be positive");
  return det;
}

DetInstance parse_instance(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string serialize_instance(const DetInstance& det) {
  validate(det);
  std::ostringstream out;
  out << det.n << '\n';
  for (int i = 0; i < det.n; ++i)
    out << det.profits[static_cast<std::size_t>(i)] << ' '
        << det.weights[static_cast<std::size_t>(i)] << '\n';
  out << det.capacity << '\n';
  return out.str();
}

const char* to_string(InstanceKind kind) {
  return kind == InstanceKind::uncorr ? "uncorr" : "bou-s-c";
}

InstanceKind instance_kind_from_string(const std::string& name) {
  if (name == "uncorr") return InstanceKind::uncorr;
  if (name == "bou-s-c" || name == "bou_s_c") return InstanceKind::bou_s_c;
  fail("unknown instance kind: " + name);
}

DetInstance generate_instance(InstanceKind kind, int n, std::uint64_t seed,
                              long long profit_shift,
                              std::optional<long long> capacity) {
  if (n < 1) fail("instance must have at least one item");
  if (kind == InstanceKind::bou_s_c && profit_shift < 1)
    fail("profit shift must be positive");

  rng::Engine eng(seed);
  DetInstance det;
  det.n = n;
  det.profits.resize(static_cast<std::size_t>(n));
  det.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (kind == InstanceKind::uncorr) {
      det.profits[static_cast<std::size_t>(i)] = rng::uniform_int(eng, 1, 1000);
      det.weights[static_cast<std::size_t>(i)] = rng::uniform_int(eng, 1, 1000);
    } else {
      const long long w = rng::uniform_int(eng, 1, 1000);
      det.weights[static_cast<std::size_t>(i)] = w;
      det.profits[static_cast<std::size_t>(i)] = w + profit_shift;
    }
  }
  if (capacity.has_value()) {
    det.capacity = *capacity;
  } else {
    const long long total =
        std::accumulate(det.weights.begin(), det.weights.end(), 0LL);
    det.capacity = std::max(total / 2, 1LL);
  }
  validate(det);
  return det;
}

std::pair<CCInstance, AdaptationReport> adapt_instance(const DetInstance& det,
                                                       long long gamma,
                                                       WeightModel model,
                                                       double alpha) {
  validate(det);
  if (gamma < 0) fail("gamma must be nonnegative");

  // k = longest prefix of the ascending-weight order whose sum fits the
  // original capacity; ties in weight keep original index order.
  std::vector<int> order(static_cast<std::size_t>(det.n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return det.weights[static_cast<std::size_t>(a)] <
           det.weights[static_cast<std::size_t>(b)];
  });
  int k = 0;
  long long used = 0;
  for (int idx : order) {
    used += det.weights[static_cast<std::size_t>(idx)];
    if (used > det.capacity) break;
    ++k;
  }

  AdaptationReport report;
  report.gamma = gamma;
  report.k = k;
  report.original_capacity = det.capacity;
  report.adapted_capacity =
      static_cast<double>(det.capacity + static_cast<long long>(k) * gamma);

  CCInstance inst;
  inst.n = det.n;
  inst.profits = det.profits;
  inst.expected_weights.resize(static_cast<std::size_t>(det.n));
  for (int i = 0; i < det.n; ++i)
    inst.expected_weights[static_cast<std::size_t>(i)] =
        static_cast<double>(det.weights[static_cast<std::size_t>(i)] + gamma);
  inst.model = std::move(model);
  inst.capacity = report.adapted_capacity;
  inst.alpha = alpha;
  validate(inst);
  return {std::move(inst), report};
}

WeightStats weight_stats(const CCInstance& inst, const Solution& x) {
  if (x.size() != inst.n) fail("solution length does not match instance");
  WeightStats stats;
  for (int i = 0; i < inst.n; ++i) {
    if (!x.bits[static_cast<std::size_t>(i)]) continue;
    stats.expected += inst.expected_weights[static_cast<std::size_t>(i)];
    stats.variance += item_variance(inst, i);
    ++stats.count;
  }
  return stats;
}

long long profit(const CCInstance& inst, const Solution& x) {
  if (x.size() != inst.n) fail("solution length does not match instance");
  long long total = 0;
  for (int i = 0; i < inst.n; ++i)
    if (x.bits[static_cast<std::size_t>(i)])
      total += inst.profits[static_cast<std::size_t>(i)];
  return total;
}

long long profit(const DetInstance& det, const Solution& x) {
  if (x.size() != det.n) fail("solution length does not match instance");
  long long total = 0;
  for (int i = 0; i < det.n; ++i)
    if (x.bits[static_cast<std::size_t>(i)])
      total += det.profits[static_cast<std::size_t>(i)];
  return total;
}

long long dp_optimum(const DetInstance& det) {
  validate(det);
  // One table cell per capacity unit; refuse absurd sizes instead of
  // truncating.
  constexpr long long kMaxCells = 1LL << 28;
  if (det.capacity + 1 > kMaxCells) {
    std::ostringstream out;
    out << "capacity " << det.capacity << " exceeds the DP memory budget of "
        << kMaxCells << " cells";
    throw std::length_error(out.str());
  }
  std::vector<long long> best(static_cast<std::size_t>(det.capacity) + 1, 0);
  for (int i = 0; i < det.n; ++i) {
    const long long w = det.weights[static_cast<std::size_t>(i)];
    const long long p = det.profits[static_cast<std::size_t>(i)];
    for (long long c = det.capacity; c >= w; --c) {
      const long long candidate = best[static_cast<std::size_t>(c - w)] + p;
      if (candidate > best[static_cast<std::size_t>(c)])
        best[static_cast<std::size_t>(c)] = candidate;
    }
  }
  return best.back();
}

CCInstance cc_from_json_text(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  CCInstance inst;
  inst.profits = doc.at("profits").get<std::vector<long long>>();
  inst.expected_weights =
      doc.at("expected_weights").get<std::vector<double>>();
  inst.n = static_cast<int>(inst.profits.size());
  inst.capacity = doc.at("capacity").get<double>();
  inst.alpha = doc.at("alpha").get<double>();

  const nlohmann::json& model = doc.at("model");
  const ModelKind kind =
      model_kind_from_string(model.at("type").get<std::string>());
  switch (kind) {
    case ModelKind::deterministic:
      inst.model = WeightModel::deterministic();
      break;
    case ModelKind::uniform_additive:
      inst.model = WeightModel::uniform_additive(model.at("delta").get<double>());
      break;
    case ModelKind::uniform_relative:
      inst.model = WeightModel::uniform_relative(model.at("beta").get<double>());
      break;
    case ModelKind::normal:
      inst.model = WeightModel::normal(
          model.at("variances").get<std::vector<double>>());
      break;
  }
  validate(inst);
  return inst;
}

std::string cc_to_json_text(const CCInstance& inst) {
  validate(inst);
  nlohmann::json model;
  model["type"] = to_string(inst.model.kind);
  switch (inst.model.kind) {
    case ModelKind::deterministic:
      break;
    case ModelKind::uniform_additive:
      model["delta"] = inst.model.delta;
      break;
    case ModelKind::uniform_relative:
      model["beta"] = inst.model.beta;
      break;
    case ModelKind::normal:
      model["variances"] = inst.model.variances;
      break;
  }
  nlohmann::json doc;
  doc["profits"] = inst.profits;
  doc["expected_weights"] = inst.expected_weights;
  doc["model"] = std::move(model);
  doc["capacity"] = inst.capacity;
  doc["alpha"] = inst.alpha;
  return doc.dump(2) + "\n";
}

}  // namespace ccknap
