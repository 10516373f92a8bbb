#pragma once

#include <cstddef>

namespace gapex::kernels {

// Hot inner loop of every backward-induction sweep:
//   out[x*A + a] = sum_y P[x][a][y] * v[y]
// Entries are independent, so the parallel variant is bitwise identical to
// the serial one.
void expected_next(int S, int A, const double* transition, const double* v, double* out);
void expected_next_serial(int S, int A, const double* transition, const double* v, double* out);

// Q-row reduction for one step:
//   v_out[x] = max_a q[x*A + a],  argmax_out[x] = smallest maximizing a.
// argmax_out may be null.
void row_max(int S, int A, const double* q, double* v_out, int* argmax_out);
void row_max_serial(int S, int A, const double* q, double* v_out, int* argmax_out);

}  // namespace gapex::kernels
