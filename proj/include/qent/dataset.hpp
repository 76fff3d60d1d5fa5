#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qent/density.hpp"
#include "qent/statevector.hpp"

namespace qent {

enum class Family {
  TwoQubitConcurrence,
  GhzClass,
  BipartiteA_BC,
  BipartiteB_AC,
  BipartiteC_AB,
  SeparableProduct,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// A prepared state with its class label: +1 separable, -1 entangled.
// witness_value holds the concurrence for two-qubit states, the pair
// concurrence for bipartite states, and the Meyer-Wallach value for the
// GHZ class; 0 for separable products.
struct LabeledState {
  Family family;
  std::vector<double> gen_params;
  Statevector state;
  int label = 0;
  double witness_value = 0.0;
};

enum class BipartiteSplit { A_BC, B_AC, C_AB };

// Two-qubit preparation: RX(theta0) on the control qubit followed
// by a controlled RY(theta1). Concurrence closed form: |sin(theta0) sin(theta1/2)|.
// The separable/entangled label is decided from the angles (exact zeros of
// the closed form), not from floating-point concurrence of the state.
LabeledState gen_two_qubit(double theta0, double theta1);
// Same family with local RZ phases appended (used for the c = 1 regime).
LabeledState gen_two_qubit_phased(double theta0, double theta1, double phase0,
                                  double phase1);

// Tensor product of RY(alpha) RZ(beta) single-qubit states; label +1.
LabeledState gen_separable(int n_qubits,
                           const std::vector<std::pair<double, double>>& angles);

// (1/sqrt(P)) (cos v |000> + sin v e^{i phi} |Phi_A Phi_B Phi_C>); label -1.
// Ranges: v in (0, pi/4], phi in [0, 2pi), theta_{A,B,C} in (0, pi/2].
LabeledState gen_ghz_class(double v, double phi, double theta_a, double theta_b,
                           double theta_c);

// Closed-form normalizer of the GHZ family (equals the squared norm of the
// unnormalized superposition).
double ghz_normalizer(double v, double phi, double theta_a, double theta_b,
                      double theta_c);

// Entangled pair (two-qubit family) tensored with a lone RY/RZ qubit.
// Qubits are laid out A=0, B=1, C=2; the split names the lone qubit.
// pair_params must have nonzero closed-form concurrence.
LabeledState gen_bipartite(BipartiteSplit split, double theta0, double theta1,
                           double alpha, double beta);

// Convex mixture of separable product states (documented completeness
// generator; the pure-state pipeline never consumes this).
DensityMatrix gen_separable_mixture(
    int n_qubits, const std::vector<double>& weights,
    const std::vector<std::vector<std::pair<double, double>>>& angles);

// Re-derives the state for a serialized record from family + gen_params.
LabeledState regenerate(Family family, const std::vector<double>& gen_params);

enum class Regime {
  MixedConcurrence,    // 2-qubit, 0 < c < 1 by rejection with margin 0.05
  MaximalConcurrence,  // 2-qubit, c = 1 with random local RZ phases
  GhzClass,            // 3-qubit full-entangled
  BipartiteA_BC,
  BipartiteB_AC,
  BipartiteC_AB,
};

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);
int regime_qubits(Regime r);

struct DatasetSplit {
  Regime regime;
  std::vector<LabeledState> train;
  std::vector<LabeledState> test;
  std::uint64_t seed = 0;
};

// Entangled states drawn from the regime's family only, for evaluation sets
// where accuracy means detection rate on the regime.
std::vector<LabeledState> sample_regime_states(Regime regime, int count,
                                               std::uint64_t seed);

// Deterministic balanced split: half entangled states from the regime, half
// separable products, in both train and test. m_train must be even, >= 2,
// and at most 2^n for the regime's qubit count.
DatasetSplit make_split(Regime regime, int m_train, int m_test,
                        std::uint64_t seed);

void write_dataset(std::ostream& out, const DatasetSplit& split);
DatasetSplit read_dataset(std::istream& in);
void save_dataset(const std::string& path, const DatasetSplit& split);
DatasetSplit load_dataset(const std::string& path);

}  // namespace qent
