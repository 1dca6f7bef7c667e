#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ios>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "threadsum/error.hpp"
#include "threadsum/opinio.hpp"
#include "threadsum/resources.hpp"

namespace threadsum {
namespace {

constexpr std::string_view kMagic = "threadsum-fact-opinion";
constexpr int kVersion = 1;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 14695981039346656037ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::size_t bucket(std::string_view feature, const ClassifierSpec& spec) {
  std::uint64_t h = 14695981039346656037ULL;
  for (int i = 0; i < 8; ++i) {
    h ^= (spec.seed >> (8 * i)) & 0xFF;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(fnv1a(feature, h) % spec.dim);
}

std::string_view pos_feature(Pos p) {
  switch (p) {
    case Pos::ProperNoun: return "#pos:propn";
    case Pos::CommonNoun: return "#pos:noun";
    case Pos::Pronoun: return "#pos:pron";
    case Pos::QuestionWord: return "#pos:wh";
    case Pos::Other: return "#pos:other";
  }
  return "#pos:other";
}

std::string hex(double v) {
  std::ostringstream os;
  os << std::hexfloat << v;
  return os.str();
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw DataError("model: bad number '" + s + "'");
  return v;
}

std::string expect_key(std::istream& in, std::string_view key) {
  std::string k, v;
  if (!(in >> k >> v) || k != key) throw DataError("model: expected '" + std::string(key) + "'");
  return v;
}

}  // namespace

std::vector<LabeledText> read_labeled(std::istream& in) {
  std::vector<LabeledText> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("labelled data line " + std::to_string(lineno) + ": missing tab");
    const std::string label = to_lower(line.substr(0, tab));
    TileKind kind;
    if (label == "fact") kind = TileKind::Fact;
    else if (label == "opinion") kind = TileKind::Opinion;
    else throw DataError("labelled data line " + std::to_string(lineno) + ": unknown label '" + label + "'");
    out.push_back({line.substr(tab + 1), kind});
  }
  return out;
}

void ClassifierSpec::validate() const {
  if (dim == 0) throw std::invalid_argument("classifier: dim must be positive");
  if (orders.empty()) throw std::invalid_argument("classifier: no n-gram orders");
  for (int n : orders)
    if (n < 1) throw std::invalid_argument("classifier: n-gram orders must be positive");
  if (epochs < 1) throw std::invalid_argument("classifier: epochs must be positive");
  if (!(eta0 > 0.0) || !std::isfinite(eta0)) throw std::invalid_argument("classifier: eta0 must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("classifier: lambda must be >= 0");
}

SparseFeatures extract_features(std::string_view text, const ClassifierSpec& spec) {
  std::map<std::size_t, double> counts;
  for (const Sentence& s : analyze(text)) {
    std::vector<std::string> units;
    for (const Token& t : s.tokens) {
      if (t.kind == TokenKind::Word) {
        units.push_back(t.stem);
        counts[bucket(pos_feature(t.pos), spec)] += 1.0;
      } else if (t.kind == TokenKind::Number) {
        units.push_back("#num");
      }
    }
    for (int n : spec.orders) {
      const auto len = static_cast<std::size_t>(n);
      for (std::size_t i = 0; i + len <= units.size(); ++i) {
        std::string gram = std::to_string(n);
        for (std::size_t k = i; k < i + len; ++k) {
          gram += '\x1f';
          gram += units[k];
        }
        counts[bucket(gram, spec)] += 1.0;
      }
    }
  }
  double sq = 0.0;
  for (const auto& [i, v] : counts) sq += v * v;
  SparseFeatures out(counts.begin(), counts.end());
  if (sq > 0.0) {
    const double norm = std::sqrt(sq);
    for (auto& [i, v] : out) v /= norm;
  }
  return out;
}

FactOpinionModel::FactOpinionModel(ClassifierSpec spec, std::vector<double> weights, double bias)
    : spec_(std::move(spec)), weights_(std::move(weights)), bias_(bias) {
  spec_.validate();
  if (weights_.size() != spec_.dim) throw std::invalid_argument("classifier: weight vector size != dim");
}

FactOpinionModel FactOpinionModel::train(std::span<const LabeledText> examples,
                                         const ClassifierSpec& spec) {
  spec.validate();
  const bool has_fact = std::any_of(examples.begin(), examples.end(),
                                    [](const LabeledText& e) { return e.label == TileKind::Fact; });
  const bool has_opinion = std::any_of(examples.begin(), examples.end(),
                                       [](const LabeledText& e) { return e.label == TileKind::Opinion; });
  if (!has_fact || !has_opinion)
    throw std::invalid_argument("classifier: training data needs both fact and opinion examples");

  std::vector<SparseFeatures> xs;
  std::vector<double> ys;
  for (const auto& e : examples) {
    xs.push_back(extract_features(e.text, spec));
    ys.push_back(e.label == TileKind::Opinion ? 1.0 : -1.0);
  }

  // w = scale * v keeps the L2 decay O(1) per step.
  std::vector<double> v(spec.dim, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(rng)]);
    }
    for (std::size_t idx : order) {
      const double eta = spec.eta0 / (1.0 + spec.eta0 * spec.lambda * static_cast<double>(t++));
      double margin = bias;
      for (const auto& [f, x] : xs[idx]) margin += scale * v[f] * x;
      margin *= ys[idx];
      scale *= 1.0 - eta * spec.lambda;
      if (margin < 1.0) {
        for (const auto& [f, x] : xs[idx]) v[f] += eta * ys[idx] * x / scale;
        bias += eta * ys[idx];
      }
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
    }
  }
  for (double& w : v) w *= scale;
  return FactOpinionModel(spec, std::move(v), bias);
}

double FactOpinionModel::score(std::string_view text) const {
  if (weights_.empty()) throw std::logic_error("classifier: model is not trained");
  double s = bias_;
  for (const auto& [f, x] : extract_features(text, spec_)) s += weights_[f] * x;
  return s;
}

TileKind FactOpinionModel::classify(std::string_view text) const {
  return score(text) > 0.0 ? TileKind::Opinion : TileKind::Fact;
}

void FactOpinionModel::save(std::ostream& out) const {
  out << kMagic << ' ' << kVersion << '\n'
      << "dim " << spec_.dim << '\n'
      << "seed " << spec_.seed << '\n'
      << "orders " << spec_.orders.size();
  for (int n : spec_.orders) out << ' ' << n;
  out << '\n'
      << "epochs " << spec_.epochs << '\n'
      << "eta0 " << hex(spec_.eta0) << '\n'
      << "lambda " << hex(spec_.lambda) << '\n'
      << "bias " << hex(bias_) << '\n';
  std::size_t nonzero = 0;
  for (double w : weights_)
    if (w != 0.0) ++nonzero;
  out << "weights " << nonzero << '\n';
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] != 0.0) out << i << ' ' << hex(weights_[i]) << '\n';
}

FactOpinionModel FactOpinionModel::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw DataError("model: not a fact/opinion model file");
  if (version != kVersion) throw DataError("model: unsupported version " + std::to_string(version));
  ClassifierSpec spec;
  try {
    spec.dim = std::stoull(expect_key(in, "dim"));
    spec.seed = std::stoull(expect_key(in, "seed"));
    const auto n_orders = std::stoul(expect_key(in, "orders"));
    spec.orders.assign(n_orders, 0);
    for (int& n : spec.orders)
      if (!(in >> n)) throw DataError("model: truncated n-gram orders");
    spec.epochs = std::stoi(expect_key(in, "epochs"));
  } catch (const std::logic_error&) {
    throw DataError("model: bad header value");
  }
  spec.eta0 = parse_double(expect_key(in, "eta0"));
  spec.lambda = parse_double(expect_key(in, "lambda"));
  const double bias = parse_double(expect_key(in, "bias"));
  std::size_t nonzero = 0;
  try {
    nonzero = std::stoull(expect_key(in, "weights"));
  } catch (const std::logic_error&) {
    throw DataError("model: bad weight count");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("model: ") + e.what());
  }
  std::vector<double> weights(spec.dim, 0.0);
  for (std::size_t k = 0; k < nonzero; ++k) {
    std::size_t i = 0;
    std::string value;
    if (!(in >> i >> value)) throw DataError("model: truncated weights");
    if (i >= spec.dim) throw DataError("model: weight index out of range");
    weights[i] = parse_double(value);
  }
  return FactOpinionModel(std::move(spec), std::move(weights), bias);
}

FactOpinionModel bundled_model(std::uint64_t seed) {
  std::istringstream in{std::string(resources::fact_opinion_training)};
  ClassifierSpec spec;
  spec.seed = seed;
  const auto examples = read_labeled(in);
  return FactOpinionModel::train(examples, spec);
}

}  // namespace threadsum
