#pragma once

#include <vector>

namespace perioloz {

// beta_i = alpha_{d-1} ... alpha_{d-i}; only d mod k matters.
struct BetaData {
  int k = 1;
  int d_mod_k = 0;
  std::vector<double> betas;     // beta_1..beta_k (beta_k = 1)
  std::vector<double> distinct;  // sorted ascending
  std::vector<int> mults;
  int l = 0;
  std::vector<int> residue_class;  // residue_class[n] = 0-based class of beta_n, n = 0..k-1 (beta_0 = beta_k)

  double beta(long n) const;  // k-periodic, beta_0 = 1
  // Class of the half-integer slice m (given as 2m), i.e. of beta_{(d - m - 1/2) mod k}.
  int class_of_half(long m2) const;
};

struct WeightSpec {
  int k = 1;
  std::vector<double> alphas;
  double r = 1.0;
  int d = 1;
  double gamma = 1.0;
  BetaData bd;

  double q() const;
  double V() const { return r * d; }

  // Throws SpecError on a violated invariant (prod alpha = 1, positivity, d >= 1, r > 0).
  static WeightSpec make(std::vector<double> alphas, double r, int d);
  static WeightSpec from_q(std::vector<double> alphas, double q, int d);
};

// Throws SpecError naming the invariant when prod alpha != 1 within 1e-12 relative.
void validate_alphas(const std::vector<double>& alphas);
double gamma_of(const std::vector<double>& alphas);
BetaData beta_data(const std::vector<double>& alphas, int d_mod_k);

double q_weight(const WeightSpec& spec, int t);

// m is a half-integer, 0 < m < d for x_plus and m < 0 for x_minus.
double x_plus(const WeightSpec& spec, double m);
double x_minus(const WeightSpec& spec, double m);

// Number of half-integers m with t < m < d whose beta class is i (1-based).
int count_N(const WeightSpec& spec, int t, int i);
std::vector<int> count_N_all(const WeightSpec& spec, int t);

// Per-class count of half-integers strictly between slices a <= b (only their residues against d mod k matter).
std::vector<int> count_between(const BetaData& bd, long a, long b);

}  // namespace perioloz
