#include "zetakit/series.hpp"

namespace zetakit {

SeriesQ series_exp(const SeriesQ& s) {
    if (s.c[0] != 0) throw InputError("series_exp requires constant term 0");
    SeriesQ r(s.ring, s.B);
    r.c[0] = 1;
    // E' = s'E termwise: n e_n = sum_{j=1}^{n} j s_j e_{n-j}
    for (int n = 1; n <= s.B; ++n) {
        QQ acc(0);
        for (int j = 1; j <= n; ++j) acc += QQ(j) * s.c[j] * r.c[n - j];
        r.c[n] = acc / QQ(n);
    }
    return r;
}

SeriesQ series_log(const SeriesQ& s) {
    if (s.c[0] != 1) throw InputError("series_log requires constant term 1");
    SeriesQ r(s.ring, s.B);
    r.c[0] = 0;
    for (int n = 1; n <= s.B; ++n) {
        QQ acc(0);
        for (int j = 1; j < n; ++j) acc += QQ(j) * r.c[j] * s.c[n - j];
        r.c[n] = s.c[n] - acc / QQ(n);
    }
    return r;
}

SeriesQ to_rational_series(const SeriesZ& s) {
    SeriesQ r(QRing{}, s.B);
    for (int i = 0; i <= s.B; ++i) r.c[i] = QQ(s.c[i]);
    return r;
}

SeriesZ to_integer_series(const SeriesQ& s, const char* what) {
    SeriesZ r(ZRing{}, s.B);
    for (int i = 0; i <= s.B; ++i) {
        if (s.c[i].get_den() != 1)
            throw InvariantError(std::string(what) + ": coefficient of T^" + std::to_string(i) + " = " +
                                 s.c[i].get_str() + " is not an integer");
        r.c[i] = s.c[i].get_num();
    }
    return r;
}

SeriesMod reduce_series(const SeriesZ& s, const ModRing& ring) {
    SeriesMod r(ring, s.B);
    for (int i = 0; i <= s.B; ++i) r.c[i] = ring.reduce(s.c[i]);
    return r;
}

SeriesZ zeta_series_from_counts(const PointCountSequence& counts) {
    int B = counts.B();
    SeriesQ logz(QRing{}, B);
    for (int k = 1; k <= B; ++k) logz.c[k] = make_qq(ZZ(counts.counts[k - 1]), ZZ(k));
    SeriesQ z = series_exp(logz);
    return to_integer_series(z, "zeta series");
}

}  // namespace zetakit
