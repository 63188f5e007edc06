#pragma once

namespace hecke {

enum class Parity { even, odd };

// Constants of the Hecke triangle group G_q.
struct HeckeContext {
    int q = 0;
    double lambda = 0.0;
    int h = 0;
    int kappa = 0;
    double R = 0.0;
    double r = 0.0;
    Parity parity = Parity::odd;

    bool even() const { return parity == Parity::even; }
};

// Throws DomainError for q < 3.
HeckeContext make_context(int q);

} // namespace hecke
