#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

#include "precondaor/preconditioners.hpp"

namespace precondaor {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

std::string fmt(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

std::string fmt(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.order(); ++i) {
    if (i) out += ';';
    for (int j = 0; j < m.order(); ++j) {
      if (j) out += ',';
      out += fmt(m(i, j));
    }
  }
  return out;
}

std::string fmt_index(int zero_based) { return std::to_string(zero_based + 1); }

class KeyValues {
public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0)
        throw SpecError("spec text: expected key=value, got '" + token + "'");
      const std::string key = token.substr(0, eq);
      if (kv_.count(key)) throw SpecError("spec text: duplicate key '" + key + "'");
      kv_[key] = token.substr(eq + 1);
    }
    if (kv_.empty()) throw SpecError("spec text: empty specification");
  }

  std::string take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw SpecError("spec text: missing key '" + key + "'");
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  void finish() const {
    if (!kv_.empty())
      throw SpecError("spec text: unexpected key '" + kv_.begin()->first + "'");
  }

private:
  std::map<std::string, std::string> kv_;
};

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw SpecError("spec text: bad number '" + s + "'");
  }
  if (pos != s.size()) throw SpecError("spec text: bad number '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw SpecError("spec text: empty list");
  return out;
}

Matrix parse_matrix(const std::string& s) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(s);
  std::string row;
  while (std::getline(in, row, ';')) rows.push_back(parse_list(row));
  const int n = static_cast<int>(rows.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw SpecError("spec text: matrix rows must all have the same length");
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

int parse_index(const std::string& s) {
  const double v = parse_double(s);
  const int i = static_cast<int>(v);
  if (i != v || i < 1) throw SpecError("spec text: indices are 1-based integers");
  return i - 1;
}

QVariant parse_variant(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (int k = 0; k < 34; ++k) {
    const auto v = static_cast<QVariant>(k);
    if (name == variant_name(v)) return v;
  }
  throw SpecError("spec text: unknown variant '" + name + "'");
}

}  // namespace

std::string to_text(const PreconditionerSpec& spec) {
  std::ostringstream os;
  os << "variant=" << variant_name(spec.variant);
  const auto field = [&](const char* key, const auto& value) {
    os << ' ' << key << '=' << fmt(value);
  };
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Q1Params>) {
          field("q", p.q);
        } else if constexpr (std::is_same_v<P, Q2Params> ||
                             std::is_same_v<P, Q3Params> ||
                             std::is_same_v<P, Q12Params>) {
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q4Params> ||
                             std::is_same_v<P, Q13Params>) {
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q5Params>) {
          os << " row=" << fmt_index(p.row);
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q6Params>) {
          os << " col=" << fmt_index(p.col);
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q7Params> ||
                             std::is_same_v<P, Q16Params>) {
          os << " r=" << fmt_index(p.row) << " s=" << fmt_index(p.col);
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q8Params> ||
                             std::is_same_v<P, Q17Params> ||
                             std::is_same_v<P, Q18Params>) {
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q9Params> ||
                             std::is_same_v<P, Q10Params> ||
                             std::is_same_v<P, Q19Params>) {
          field("alpha", p.alpha);
          field("beta", p.beta);
        } else if constexpr (std::is_same_v<P, Q11Params> ||
                             std::is_same_v<P, Q20Params>) {
          field("alpha", p.alpha);
          field("beta", p.beta);
        } else if constexpr (std::is_same_v<P, Q14Params>) {
          os << " row=" << fmt_index(p.row);
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q15Params>) {
          os << " col=" << fmt_index(p.col);
          field("alpha", p.alpha);
        } else if constexpr (std::is_same_v<P, Q21Params>) {
          field("a.alpha", p.lower.alpha);
          field("b.alpha", p.upper.alpha);
        } else if constexpr (std::is_same_v<P, Q22Params>) {
          field("a.alpha", p.corner.alpha);
          field("b.alpha", p.upper.alpha);
        } else if constexpr (std::is_same_v<P, Q23Params>) {
          field("a.alpha", p.lower.alpha);
          field("b.alpha", p.super.alpha);
        } else if constexpr (std::is_same_v<P, Q24Params>) {
          field("a.alpha", p.lower.alpha);
          field("b.alpha", p.super.alpha);
        } else if constexpr (std::is_same_v<P, Q25Params>) {
          field("a.alpha", p.lower.alpha);
          field("b.alpha", p.super.alpha);
        } else if constexpr (std::is_same_v<P, Q26Params>) {
          field("a.alpha", p.corner.alpha);
          field("b.alpha", p.super.alpha);
        } else if constexpr (std::is_same_v<P, Q27Params>) {
          field("a.alpha", p.sub.alpha);
          field("b.alpha", p.corner.alpha);
          field("b.beta", p.corner.beta);
        } else if constexpr (std::is_same_v<P, Q28Params>) {
          field("a.alpha", p.sub.alpha);
          field("b.alpha", p.super.alpha);
        } else if constexpr (std::is_same_v<P, Q29Params>) {
          field("a.alpha", p.lower.alpha);
          field("b.alpha", p.upper.alpha);
        } else if constexpr (std::is_same_v<P, Q30Params>) {
          field("a.alpha", p.lower.alpha);
          field("b.alpha", p.upper.alpha);
        } else if constexpr (std::is_same_v<P, Q31Params>) {
          field("a.alpha", p.lower.alpha);
          field("b.alpha", p.upper.alpha);
        } else if constexpr (std::is_same_v<P, Q32Params>) {
          os << " row=" << fmt_index(p.row);
          field("a.alpha", p.left);
          field("b.alpha", p.right);
        } else if constexpr (std::is_same_v<P, Q33Params>) {
          os << " col=" << fmt_index(p.col);
          field("a.alpha", p.above);
          field("b.alpha", p.below);
        } else if constexpr (std::is_same_v<P, Q34Params>) {
          field("a.alpha", p.corner_low.alpha);
          field("a.beta", p.corner_low.beta);
          field("b.alpha", p.corner_high.alpha);
          field("b.beta", p.corner_high.beta);
        }
      },
      spec.params);
  return os.str();
}

PreconditionerSpec parse_spec(const std::string& text) {
  KeyValues kv(text);
  const QVariant v = parse_variant(kv.take("variant"));
  PreconditionerSpec spec;
  spec.variant = v;

  const auto scalar = [&](const char* key) { return parse_double(kv.take(key)); };
  const auto list = [&](const char* key) { return parse_list(kv.take(key)); };
  const auto matrix = [&](const char* key) { return parse_matrix(kv.take(key)); };
  const auto index = [&](const char* key) { return parse_index(kv.take(key)); };

  switch (v) {
    case QVariant::Q1: spec.params = Q1Params{matrix("q")}; break;
    case QVariant::Q2: spec.params = Q2Params{matrix("alpha")}; break;
    case QVariant::Q3: spec.params = Q3Params{matrix("alpha")}; break;
    case QVariant::Q4: spec.params = Q4Params{scalar("alpha")}; break;
    case QVariant::Q5: spec.params = Q5Params{index("row"), list("alpha")}; break;
    case QVariant::Q6: spec.params = Q6Params{index("col"), list("alpha")}; break;
    case QVariant::Q7:
      spec.params = Q7Params{index("r"), index("s"), scalar("alpha")};
      break;
    case QVariant::Q8: spec.params = Q8Params{list("alpha")}; break;
    case QVariant::Q9: spec.params = Q9Params{list("alpha"), list("beta")}; break;
    case QVariant::Q10: spec.params = Q10Params{list("alpha"), list("beta")}; break;
    case QVariant::Q11: spec.params = Q11Params{scalar("alpha"), scalar("beta")}; break;
    case QVariant::Q12: spec.params = Q12Params{matrix("alpha")}; break;
    case QVariant::Q13: spec.params = Q13Params{scalar("alpha")}; break;
    case QVariant::Q14: spec.params = Q14Params{index("row"), list("alpha")}; break;
    case QVariant::Q15: spec.params = Q15Params{index("col"), list("alpha")}; break;
    case QVariant::Q16:
      spec.params = Q16Params{index("r"), index("s"), scalar("alpha")};
      break;
    case QVariant::Q17: spec.params = Q17Params{list("alpha")}; break;
    case QVariant::Q18: spec.params = Q18Params{list("alpha")}; break;
    case QVariant::Q19: spec.params = Q19Params{list("alpha"), list("beta")}; break;
    case QVariant::Q20: spec.params = Q20Params{scalar("alpha"), scalar("beta")}; break;
    case QVariant::Q21:
      spec.params = Q21Params{Q5Params{-1, list("a.alpha")}, Q12Params{matrix("b.alpha")}};
      break;
    case QVariant::Q22:
      spec.params = Q22Params{Q7Params{-1, -1, scalar("a.alpha")},
                              Q12Params{matrix("b.alpha")}};
      break;
    case QVariant::Q23:
      spec.params = Q23Params{Q3Params{matrix("a.alpha")}, Q17Params{list("b.alpha")}};
      break;
    case QVariant::Q24:
      spec.params = Q24Params{Q5Params{-1, list("a.alpha")}, Q17Params{list("b.alpha")}};
      break;
    case QVariant::Q25:
      spec.params = Q25Params{Q6Params{-1, list("a.alpha")}, Q17Params{list("b.alpha")}};
      break;
    case QVariant::Q26:
      spec.params = Q26Params{Q7Params{-1, -1, scalar("a.alpha")},
                              Q17Params{list("b.alpha")}};
      break;
    case QVariant::Q27:
      spec.params = Q27Params{Q8Params{list("a.alpha")},
                              Q20Params{scalar("b.alpha"), scalar("b.beta")}};
      break;
    case QVariant::Q28:
      spec.params = Q28Params{Q8Params{list("a.alpha")}, Q17Params{list("b.alpha")}};
      break;
    case QVariant::Q29:
      spec.params = Q29Params{Q5Params{-1, list("a.alpha")}, Q15Params{-1, list("b.alpha")}};
      break;
    case QVariant::Q30:
      spec.params = Q30Params{Q6Params{-1, list("a.alpha")}, Q14Params{-1, list("b.alpha")}};
      break;
    case QVariant::Q31:
      spec.params = Q31Params{Q5Params{-1, list("a.alpha")}, Q14Params{-1, list("b.alpha")}};
      break;
    case QVariant::Q32:
      spec.params = Q32Params{index("row"), list("a.alpha"), list("b.alpha")};
      break;
    case QVariant::Q33:
      spec.params = Q33Params{index("col"), list("a.alpha"), list("b.alpha")};
      break;
    case QVariant::Q34:
      spec.params = Q34Params{Q11Params{scalar("a.alpha"), scalar("a.beta")},
                              Q20Params{scalar("b.alpha"), scalar("b.beta")}};
      break;
  }
  kv.finish();
  return spec;
}

}  // namespace precondaor
