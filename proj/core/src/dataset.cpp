#include "memnet/dataset.hpp"

#include <istream>
#include <set>
#include <sstream>
#include <string>

#include "memnet/errors.hpp"

namespace memnet {

void validate(const Dataset& ds) {
  if (ds.size() == 0) throw InvalidArgumentError("dataset is empty");
  if (ds.num_classes == 0) throw InvalidArgumentError("num_classes must be >= 1");
  if (ds.labels.size() != ds.points.size()) {
    throw InputShapeError("labels/points size mismatch");
  }
  for (const auto& p : ds.points) {
    if (p.size() != ds.d_x) throw InputShapeError("point dimension mismatch");
  }
  for (std::int64_t y : ds.labels) {
    if (y < 0 || y >= static_cast<std::int64_t>(ds.num_classes)) {
      throw InvalidArgumentError("label out of range");
    }
  }
  std::set<std::vector<Rational>> seen;
  for (const auto& p : ds.points) {
    if (!seen.insert(p).second) throw DuplicateInputError("duplicate input point");
  }
}

std::vector<std::int64_t> floors(const ScalarizedDataset& sd) {
  std::vector<std::int64_t> out;
  out.reserve(sd.values.size());
  for (const auto& v : sd.values) out.push_back(to_i64(floor_int(v)));
  return out;
}

Dataset read_csv(std::istream& in, std::size_t num_classes) {
  Dataset ds;
  ds.num_classes = num_classes;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2) {
      throw InvalidArgumentError("row " + std::to_string(row) + ": need at least one coordinate and a label");
    }
    std::vector<Rational> p;
    p.reserve(cells.size() - 1);
    try {
      for (std::size_t i = 0; i + 1 < cells.size(); ++i) p.push_back(parse_decimal(cells[i]));
    } catch (const InvalidArgumentError& e) {
      throw InvalidArgumentError("row " + std::to_string(row) + ": " + e.what());
    }
    Rational y;
    try {
      y = parse_decimal(cells.back());
    } catch (const InvalidArgumentError&) {
      throw InvalidArgumentError("row " + std::to_string(row) + ": bad label");
    }
    if (y.get_den() != 1) {
      throw InvalidArgumentError("row " + std::to_string(row) + ": label must be an integer");
    }
    if (ds.points.empty()) {
      ds.d_x = p.size();
    } else if (p.size() != ds.d_x) {
      throw InvalidArgumentError("row " + std::to_string(row) + ": inconsistent dimension");
    }
    ds.points.push_back(std::move(p));
    ds.labels.push_back(to_i64(Int(y.get_num())));
  }
  validate(ds);
  return ds;
}

RegressionWrap regression_wrap(const std::vector<std::vector<Rational>>& points,
                               const std::vector<Rational>& targets,
                               const Rational& eps) {
  if (eps <= 0 || eps > 1) throw InvalidArgumentError("regression_wrap: eps must be in (0, 1]");
  if (points.size() != targets.size()) throw InputShapeError("points/targets size mismatch");
  RegressionWrap rw;
  rw.step = eps;
  Int c_int = ceil_int(Rational(1) / eps);
  std::int64_t C = to_i64(c_int);
  rw.data.num_classes = static_cast<std::size_t>(C);
  rw.data.d_x = points.empty() ? 0 : points[0].size();
  rw.data.points = points;
  for (const auto& t : targets) {
    if (t < 0 || t > 1) throw InvalidArgumentError("regression target outside [0, 1]");
    // nearest class, ties toward the smaller index, clamped to C-1
    Rational shifted = t / eps + Rational(1, 2);
    Int c = floor_int(shifted);
    if (shifted == Rational(c)) c -= 1;  // exact midpoint: prefer smaller class
    if (c < 0) c = 0;
    if (c > C - 1) c = C - 1;
    rw.data.labels.push_back(to_i64(c));
  }
  validate(rw.data);
  return rw;
}

}  // namespace memnet
