#include "solonet/stats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

namespace solonet {

namespace {

// Continued fraction for the incomplete beta (modified Lentz iteration).
double betaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double sampleVariance(const std::vector<double>& values, double mean) {
  double sum = 0;
  for (double v : values) {
    double d = v - mean;
    sum += d * d;
  }
  return sum / static_cast<double>(values.size() - 1);
}

}  // namespace

SummaryStats summarize(const std::vector<double>& values) {
  if (values.empty()) throw EmptySample("summarize: empty sample");
  SummaryStats stats;
  stats.count = values.size();
  double sum = 0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    stats.stddev = std::sqrt(sampleVariance(values, stats.mean));
  }
  return stats;
}

double regularizedIncompleteBeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double logFront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(logFront);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * betaContinuedFraction(b, a, 1.0 - x) / b;
}

double welchTTest(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw InsufficientData("welchTTest needs at least 2 values per sample");
  }
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  SummaryStats sa = summarize(a);
  SummaryStats sb = summarize(b);
  double va = sampleVariance(a, sa.mean);
  double vb = sampleVariance(b, sb.mean);
  double se2 = va / na + vb / nb;
  if (se2 == 0.0) {
    // Both samples constant: equal means cannot be told apart, distinct
    // means trivially can.
    return sa.mean == sb.mean ? 1.0 : 0.0;
  }
  double t = (sa.mean - sb.mean) / std::sqrt(se2);
  if (t == 0.0) return 1.0;
  double df = se2 * se2 /
              ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
  double x = df / (df + t * t);
  return regularizedIncompleteBeta(df / 2.0, 0.5, x);
}

double TTestMatrix::p(std::size_t i, std::size_t j) const {
  if (i == j) throw std::invalid_argument("no self comparison in TTestMatrix");
  if (i < j) std::swap(i, j);
  return pValues[i][j];
}

TTestMatrix pairwiseMatrix(const std::vector<ArtistSample>& samples,
                           double significanceLevel) {
  TTestMatrix matrix;
  matrix.significanceLevel = significanceLevel;
  std::vector<const ArtistSample*> eligible;
  for (const auto& sample : samples) {
    if (sample.values.size() >= 2) eligible.push_back(&sample);
  }
  if (eligible.size() < 2) {
    throw InsufficientGroups("pairwise matrix needs >= 2 artists with >= 2 values each");
  }
  for (const ArtistSample* sample : eligible) {
    matrix.artists.push_back(sample->artist);
  }
  matrix.pValues.resize(eligible.size());
  matrix.flags.resize(eligible.size());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double p = welchTTest(eligible[i]->values, eligible[j]->values);
      matrix.pValues[i].push_back(p);
      matrix.flags[i].push_back(p <= significanceLevel);
    }
  }
  return matrix;
}

std::string ttestMatrixToCsv(const TTestMatrix& matrix) {
  std::ostringstream out;
  out << "artist";
  for (std::size_t j = 0; j + 1 < matrix.artists.size(); ++j) {
    out << ',' << matrix.artists[j];
  }
  out << '\n';
  out.setf(std::ios::fixed);
  out.precision(4);
  for (std::size_t i = 1; i < matrix.artists.size(); ++i) {
    out << matrix.artists[i];
    for (std::size_t j = 0; j < i; ++j) {
      out << ',' << matrix.pValues[i][j];
      if (matrix.flags[i][j]) out << '*';
    }
    for (std::size_t j = i; j + 1 < matrix.artists.size(); ++j) out << ',';
    out << '\n';
  }
  return out.str();
}

std::string ttestMatrixToJson(const TTestMatrix& matrix) {
  nlohmann::json doc;
  doc["artists"] = matrix.artists;
  doc["significance_level"] = matrix.significanceLevel;
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json flagRows = nlohmann::json::array();
  for (std::size_t i = 0; i < matrix.pValues.size(); ++i) {
    rows.push_back(matrix.pValues[i]);
    nlohmann::json flagRow = nlohmann::json::array();
    for (bool flag : matrix.flags[i]) flagRow.push_back(flag);
    flagRows.push_back(std::move(flagRow));
  }
  doc["p_values"] = std::move(rows);
  doc["flags"] = std::move(flagRows);
  return doc.dump(1);
}

std::vector<Histogram> pooledDistribution(
    const std::vector<std::vector<double>>& valuesPerSolo, double binWidth,
    bool normalizeMass) {
  if (binWidth <= 0) throw std::invalid_argument("binWidth must be > 0");
  std::vector<Histogram> histograms;
  histograms.reserve(valuesPerSolo.size());
  for (const auto& values : valuesPerSolo) {
    Histogram histogram;
    if (values.empty()) {
      histograms.push_back(std::move(histogram));
      continue;
    }
    std::map<std::int64_t, std::int64_t> counts;
    for (double v : values) {
      ++counts[static_cast<std::int64_t>(std::floor(v / binWidth))];
    }
    double total = static_cast<double>(values.size());
    double running = 0;
    for (const auto& [binIndex, count] : counts) {
      HistogramBin bin;
      bin.value = static_cast<double>(binIndex) * binWidth;
      bin.mass = normalizeMass ? static_cast<double>(count) / total
                               : static_cast<double>(count);
      running += bin.mass;
      bin.cumulative = running;
      histogram.bins.push_back(bin);
    }
    if (normalizeMass) histogram.bins.back().cumulative = 1.0;
    histograms.push_back(std::move(histogram));
  }
  return histograms;
}

}  // namespace solonet
