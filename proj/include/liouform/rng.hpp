#pragma once

#include <cstdint>
#include <random>

#include "liouform/matrix.hpp"

namespace liouform {

// mt19937_64 with a fixed uniform mapping, so seeded outputs are
// reproducible byte-for-byte across standard-library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Vector uniform_vector(int size, double lo, double hi) {
        Vector v(size);
        for (int i = 0; i < size; ++i) v[i] = uniform(lo, hi);
        return v;
    }

    Matrix symmetric_matrix(int size, double lo, double hi) {
        Matrix m(size, size);
        for (int i = 0; i < size; ++i) {
            for (int j = i; j < size; ++j) {
                m(i, j) = uniform(lo, hi);
                m(j, i) = m(i, j);
            }
        }
        return m;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace liouform
