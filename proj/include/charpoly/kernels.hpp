#pragma once
#include "charpoly/cauchy.hpp"
#include "charpoly/ensemble.hpp"
#include "charpoly/orthopoly.hpp"
#include "charpoly/scaled.hpp"

namespace charpoly {

enum class KernelKind { I, II, III };

// index shift relative to N for each finite-N kernel family:
// W_I uses N+K, W_II uses N, W_III uses N-K.
int kernel_index(KernelKind kind, int n, int k_shift);

struct KernelDiagnostics {
  // Set when |lambda - mu| fell in the divided-difference danger band
  // [1e-8, 1e-4) * (1 + |lambda|): the ratio form has lost digits there.
  bool near_coincident = false;
};

// W_{I,n}(lambda, mu) = [pi_n(l) pi_{n-1}(m) - pi_n(m) pi_{n-1}(l)] / (l - m);
// confluent branch below 1e-8 (1+|lambda|) separation.
ScaledComplex kernel_w1(const RecurrenceTable& t, int n, cplx lambda, cplx mu,
                        KernelDiagnostics* diag = nullptr);

// W_{II,n}(eps, mu) = [h_n(eps) pi_{n-1}(mu) - h_{n-1}(eps) pi_n(mu)] / (eps - mu).
ScaledComplex kernel_w2(const RecurrenceTable& t, const EnsembleConfig& cfg, int n,
                        cplx eps, cplx mu, const QuadratureSpec& q);

// W_{III,n}(eps, omega) = [h_n(e) h_{n-1}(w) - h_{n-1}(e) h_n(w)] / (e - w).
ScaledComplex kernel_w3(const RecurrenceTable& t, const EnsembleConfig& cfg, int n,
                        cplx eps, cplx omega, const QuadratureSpec& q);

// Classical projection kernel
// K_N(x,y) = -gamma_{N-1}/(2 pi i) e^{-N V(x)/2} W_1-num(x,y)/(x-y) e^{-N V(y)/2}.
double kernel_kn(const RecurrenceTable& t, const EnsembleConfig& cfg, int n, double x,
                 double y);

// Universal limiting kernels of the Dyson scaling limit.
// S_I(u) = sin(pi u)/(pi u) with S_I(0) = 1;
// S_II(u) = exp(+- i pi u)/u by sign of Im zeta;
// S_III = 1/(zeta-eta), -1/(zeta-eta) or 0 by the signs of Im zeta, Im eta.
cplx limit_kernel(KernelKind kind, cplx zeta, cplx eta);

}  // namespace charpoly
