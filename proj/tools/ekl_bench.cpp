// Compares the OpenMP theta kernel against the serial reference on growing
// workloads and checks the results stay bit-identical.

#include "ekl/field.hpp"
#include "ekl/ekseries.hpp"
#include <chrono>
#include <cstdio>

using namespace ekl;

namespace {

template <class F> double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    set_precision_bits(192);
    FieldData fd = preset_field("Qi");
    HermitianForm H = std_form(1);
    cvec scale(1, cplx(1));
    ComplexLattice L = embed_ideal(fd.nf, ideal_unit(fd.nf), fd.cm, scale);
    cvec z(1, cplx(parse_decimal("0.31"), parse_decimal("0.17")));
    cvec w(1, cplx(parse_decimal("0.05"), parse_decimal("0.41")));
    std::vector<int> mu = {2};

#ifdef EKL_HAVE_OPENMP
    std::puts("theta kernel: OpenMP vs serial reference");
#else
    std::puts("theta kernel: built without OpenMP, both columns run serial");
#endif
    std::puts("      t    points~      serial    parallel   identical");
    for (double td : {1.0, 0.25, 0.0625, 0.015625}) {
        real t(td);
        cplx a, b;
        double ts = timed([&] { a = theta(L, H, z, w, t, mu, nullptr, false); });
        double tp = timed([&] { b = theta(L, H, z, w, t, mu, nullptr, true); });
        bool same = a.re == b.re && a.im == b.im;
        // radius scales like 1/sqrt(t); point count like R^2
        double approx = 3.14159 * (192 * 0.7 / td);
        std::printf("%8.4f %9.0f %10.4fs %10.4fs   %s\n", td, approx, ts, tp,
                    same ? "yes" : "NO");
        if (!same) return 1;
    }
    return 0;
}
