#include "expl/centroid.hpp"

#include <fstream>
#include <sstream>

namespace explainer::centroid {

Rational parse_rational(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  auto integer = [](std::string_view v) {
    std::size_t i = (!v.empty() && v[0] == '-') ? 1 : 0;
    if (i == v.size()) throw DomainError("bad number: " + std::string(v));
    for (std::size_t k = i; k < v.size(); ++k)
      if (v[k] < '0' || v[k] > '9') throw DomainError("bad number: " + std::string(v));
    return parse_decimal(v);
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(integer(s));
  Integer d = integer(trim(s.substr(slash + 1)));
  if (d == 0) throw DomainError("zero denominator: " + std::string(s));
  return Rational(integer(trim(s.substr(0, slash))), d);
}

namespace {

std::string rat(const Rational& r) {
  Integer n = numerator(r), d = denominator(r);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

}  // namespace

std::string format_point(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + rat(v[i]);
  return s + ")";
}

LabeledDataset LabeledDataset::parse_csv(std::string_view text) {
  LabeledDataset d;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line == "\r") continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (fields.size() < 2) throw ParseError("expected coordinates and a label", lineno, 1);
    Vec v;
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) v.push_back(parse_rational(fields[i]));
    std::string label = fields.back();
    while (!label.empty() && (label.back() == '\r' || label.back() == ' ')) label.pop_back();
    while (!label.empty() && label.front() == ' ') label.erase(label.begin());
    if (label.empty()) throw ParseError("empty label", lineno, 1);
    if (!d.points.empty() && v.size() != d.dim()) throw DomainError("dimension mismatch on line " + std::to_string(lineno));
    d.points.emplace_back(std::move(v), std::move(label));
  }
  return d;
}

LabeledDataset LabeledDataset::load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

std::string LabeledDataset::to_csv() const {
  std::string s;
  for (const auto& [v, label] : points) {
    for (const auto& c : v) s += rat(c) + ",";
    s += label + "\n";
  }
  return s;
}

CentroidResult centroid_classify(const LabeledDataset& data, const Vec& point, const explain::Config& cfg) {
  if (data.points.empty()) throw DomainError("empty dataset");
  std::map<std::string, std::pair<Rational, std::size_t>> acc;
  std::uint64_t ops = 0;
  for (const auto& [v, label] : data.points) {
    if (v.size() != point.size()) throw DomainError("dimension mismatch");
    Rational d2 = 0;
    for (std::size_t i = 0; i < v.size(); ++i) d2 += (v[i] - point[i]) * (v[i] - point[i]);
    ops += v.size();
    auto& [sum, n] = acc[label];
    sum += d2;
    ++n;
  }
  CentroidResult r;
  const Rational* best = nullptr;
  bool tie = false;
  for (const auto& [label, sn] : acc) {
    Rational m = sn.first / Rational(Integer(sn.second));
    r.mean_sq[label] = m;
    const Rational& mref = r.mean_sq[label];
    if (!best || mref < *best) {
      best = &mref;
      r.label = label;
      tie = false;
    } else if (mref == *best) {
      tie = true;
    }
  }
  if (tie) throw Tie("tie at " + format_point(point));

  std::string input = data.to_csv() + format_point(point);
  r.explanation = {explain::CentroidProgram{}, nullptr, input};
  std::string target = "point " + format_point(point) + " is labeled " + r.label;
  r.report = explain::make_report(explain::serialize(r.explanation.program), input.size(), target, ops, cfg.alpha);
  return r;
}

}  // namespace explainer::centroid
