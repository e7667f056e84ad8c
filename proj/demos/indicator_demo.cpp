// Minimal library walkthrough: build a SUP-operated coherent state, look at
// its Wigner function along the real axis, and print the indicator bundle.

#include <cstdio>

#include "supop/supop.hpp"

int main() {
    using namespace supop;

    const SupParams p = sup_params(0.5);
    const Complex alpha = 0.4;

    // dual route: generic truncated-Fock engine vs closed form
    const auto rho = apply_sup(to_density(coherent_state(alpha, 64)), p).first;
    std::printf("W along the real axis (series vs closed):\n");
    for (double x = -1.5; x <= 1.01; x += 0.5) {
        const PhasePoint b(x, 0.0);
        std::printf("  x=%+.1f   %+.9f   %+.9f\n", x, wigner_series(rho, b),
                    wigner_socs_closed(p, alpha, b));
    }

    const auto disc = socs_negativity_disc(p, alpha);
    std::printf("negative disc: center (%.4f, %.4f), radius %.2f\n", disc.center.x(),
                disc.center.y(), disc.radius);

    StateSpec spec;
    spec.kind = StateKind::coherent;
    spec.alpha = alpha;
    spec.t = 0.5;
    const auto rep = indicator_report(spec);
    std::printf("V = %.6f, Q = %.6f, S_opt = %.6f, W_min = %.6f\n", rep.negative_volume,
                rep.mandel_q, rep.squeezing_opt, rep.wigner_min);

    const auto ver = verify_scheme(coherent_state(alpha, 24), default_scheme_config());
    std::printf("heralded scheme: fidelity %.6f at (s,t) = (%.4f, %.4f), P = %.3e\n",
                ver.fidelity, ver.effective.s, ver.effective.t, ver.probability);
    return 0;
}
