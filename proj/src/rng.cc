#include "stein/rng.hpp"

namespace stein {

FfMatrix random_ff_matrix(PrimeField f, size_t rows, size_t cols, Rng& rng) {
    FfMatrix m(f, rows, cols);
    for (size_t i = 0; i < rows; i++)
        for (size_t j = 0; j < cols; j++) m.at(i, j) = uint32_t(rng.below(f.p()));
    return m;
}

FfMatrix random_symplectic_ff(const SymplecticSpace& sp, Rng& rng, size_t steps) {
    FfMatrix g = FfMatrix::identity(sp.field(), sp.ambient());
    for (size_t s = 0; s < steps; s++) {
        FfMatrix v(sp.field(), 1, sp.ambient());
        bool nonzero = false;
        while (!nonzero) {
            for (size_t j = 0; j < sp.ambient(); j++) {
                v.at(0, j) = uint32_t(rng.below(sp.field().p()));
                nonzero |= v.at(0, j) != 0;
            }
        }
        uint32_t a = 1 + uint32_t(rng.below(sp.field().p() - 1));
        g = g.mul(sp.transvection(v, a));
    }
    return g;
}

} // namespace stein
