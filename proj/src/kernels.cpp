#include "gapex/kernels.hpp"

namespace gapex::kernels {

namespace {
// Work threshold (multiply-adds per sweep) below which entering a parallel
// region costs more than it saves.
constexpr long kParallelThreshold = 1L << 16;

inline void expected_next_row(int S, const double* row, const double* v, double* out) {
    double acc = 0.0;
    for (int y = 0; y < S; ++y) acc += row[y] * v[y];
    *out = acc;
}

inline void row_max_one(int A, const double* row, double* v_out, int* argmax_out) {
    double best = row[0];
    int best_a = 0;
    for (int a = 1; a < A; ++a) {
        if (row[a] > best) {
            best = row[a];
            best_a = a;
        }
    }
    *v_out = best;
    if (argmax_out) *argmax_out = best_a;
}
}  // namespace

void expected_next_serial(int S, int A, const double* transition, const double* v,
                          double* out) {
    const long rows = static_cast<long>(S) * A;
    for (long i = 0; i < rows; ++i) {
        expected_next_row(S, transition + i * S, v, &out[i]);
    }
}

void expected_next(int S, int A, const double* transition, const double* v, double* out) {
    const long rows = static_cast<long>(S) * A;
    if (rows * S <= kParallelThreshold) {
        expected_next_serial(S, A, transition, v, out);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; ++i) {
        expected_next_row(S, transition + i * S, v, &out[i]);
    }
}

void row_max_serial(int S, int A, const double* q, double* v_out, int* argmax_out) {
    for (int x = 0; x < S; ++x) {
        row_max_one(A, q + static_cast<std::size_t>(x) * A, &v_out[x],
                    argmax_out ? &argmax_out[x] : nullptr);
    }
}

void row_max(int S, int A, const double* q, double* v_out, int* argmax_out) {
    if (static_cast<long>(S) * A <= kParallelThreshold) {
        row_max_serial(S, A, q, v_out, argmax_out);
        return;
    }
#pragma omp parallel for schedule(static)
    for (int x = 0; x < S; ++x) {
        row_max_one(A, q + static_cast<std::size_t>(x) * A, &v_out[x],
                    argmax_out ? &argmax_out[x] : nullptr);
    }
}

}  // namespace gapex::kernels
