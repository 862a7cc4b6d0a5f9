// Library usage: mean exit time and extinction probability for the tumor
// model at a few initial densities, with a Monte Carlo spot check.

#include <cstdio>

#include "levyexit/mc_oracle.hpp"
#include "levyexit/model.hpp"
#include "levyexit/nonlocal_solver.hpp"

int main() {
    using namespace levyexit;

    const ModelParams model{0.1, 3.0};
    const auto states = steady_states(model);
    const Grid grid(states.x1, states.x3, 0.01);
    const NoiseParams noise{0.5, 0.5, 1.5};
    const TumorDrift f{model};

    const auto op = assemble_operator(grid, f, noise);
    const auto u = mean_exit_time(op);
    const auto p = escape_probability(op, EscapeTarget::LeftExtinction);

    std::printf("D = (%g, %g), threshold x2 = %g\n", states.x1, states.x3, states.x2);
    std::printf("%6s %12s %12s\n", "x", "u(x)", "p_left(x)");
    for (double x : {0.5, 1.0, 2.5, 4.0, 4.5}) {
        std::printf("%6.2f %12.6f %12.6f\n", x, u.at(x), p.at(x));
    }

    const SimConfig sim{1e-3, default_max_time(u.at(2.5)), 2000, 7};
    const auto est = mc_escape_probability(2.5, f, noise, ExitBounds{states.x1, states.x3}, sim,
                                           EscapeTarget::LeftExtinction);
    std::printf("Monte Carlo p_left(2.5) = %.4f +- %.4f (solver %.4f)\n", est.mean, est.std_error, p.at(2.5));
    return 0;
}
