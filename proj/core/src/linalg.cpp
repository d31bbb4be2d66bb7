#include "bellforge/linalg.hpp"

namespace bellforge {

Rat det_exact(DenseMatrix<Rat> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_exact: non-square matrix");
    const int n = m.rows();
    if (n == 0) return Rat(1);

    // Bareiss works on integers; scale each row by its common denominator first
    // and divide the scale factors back out at the end.
    mpq_class scale(1);
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (int r = 0; r < n; ++r) {
        mpz_class lcm(1);
        for (int c = 0; c < n; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(r, c).raw().get_den().get_mpz_t());
        for (int c = 0; c < n; ++c) {
            mpq_class scaled = m.at(r, c).raw() * lcm;
            a[r][c] = scaled.get_num();  // den is 1 by construction
        }
        scale *= lcm;
    }

    int sign = 1;
    mpz_class prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (a[r][k] != 0) { swap_row = r; break; }
            if (swap_row < 0) return Rat(0);
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    mpq_class det(a[n - 1][n - 1]);
    if (sign < 0) det = -det;
    det /= scale;
    det.canonicalize();
    return Rat(det);
}

}  // namespace bellforge
