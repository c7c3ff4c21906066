// Sample summaries, Welch t-tests and distribution pooling.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solonet/metrics.h"

namespace solonet {

struct EmptySample : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientGroups : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SummaryStats {
  double mean = 0;
  std::optional<double> stddev;  // Bessel-corrected; unset for a single value
  std::size_t count = 0;
};

/// Mean and sample standard deviation. Throws EmptySample.
SummaryStats summarize(const std::vector<double>& values);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularizedIncompleteBeta(double a, double b, double x);

/// Two-sided p-value of the unequal-variance t statistic with
/// Welch-Satterthwaite degrees of freedom. Two constant equal samples give
/// 1 by convention; constant separated samples give 0. Throws
/// InsufficientData when either sample has fewer than 2 values.
double welchTTest(const std::vector<double>& a, const std::vector<double>& b);

/// One metric's values across the solos of one artist.
struct ArtistSample {
  std::string artist;
  std::string metricName;
  std::vector<double> values;
};

/// Lower-triangular pairwise p-value matrix; entry (i, j) with j < i holds
/// the test between artists i and j.
struct TTestMatrix {
  std::vector<std::string> artists;
  std::vector<std::vector<double>> pValues;  // row i has i entries
  std::vector<std::vector<bool>> flags;      // p <= significanceLevel
  double significanceLevel = 0.05;

  double p(std::size_t i, std::size_t j) const;  // symmetric accessor, i != j
};

/// Pairwise Welch tests for one metric. Artists with fewer than 2 values
/// are dropped; throws InsufficientGroups when fewer than 2 remain.
TTestMatrix pairwiseMatrix(const std::vector<ArtistSample>& samples,
                           double significanceLevel = 0.05);

std::string ttestMatrixToCsv(const TTestMatrix& matrix);
std::string ttestMatrixToJson(const TTestMatrix& matrix);

/// Per-solo empirical distribution of per-node values over fixed-width bins
/// plus cumulative curve. With `normalizeMass` (the default) bin masses are
/// probabilities and every cumulative curve ends at 1; otherwise masses are
/// raw counts and the cumulative ends at the value count.
std::vector<Histogram> pooledDistribution(
    const std::vector<std::vector<double>>& valuesPerSolo, double binWidth = 0.01,
    bool normalizeMass = true);

}  // namespace solonet
