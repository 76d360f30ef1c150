// Short tour: expansions of the Seiffert and Neuman-Sandor means, their
// stabilizability test against stable means, and the best power-mean
// bracket R(B_p, M, B_q) for each.

#include <iostream>

#include <meanexp/meanexp.hpp>

using namespace meanexp;

int main()
{
    for (const char *name : {"seiffert1", "seiffert2", "ns"}) {
        const MeanSpec spec = MeanSpec::parse(name);
        std::cout << "== " << short_name(spec) << " ==\n";
        std::cout << render_text(coefficients_report("expand", name, exact_coeffs(spec, 4)));

        const auto d = stabilizable_disproof(spec, 3);
        std::cout << "stabilizable by stable K, M: " << d.verdict << "\n";

        const auto s = substab_optimize(spec, 3);
        std::cout << render_text(to_report(s)) << "\n";
    }

    // the Gauss compound of A and G at (1, 2), for comparison with the
    // usual arithmetic-geometric mean tables
    const BigFloat agm = compound_mean(MeanSpec::parse("arithmetic"), MeanSpec::parse("geometric"),
                                       BigFloat(Rational(1), 128), BigFloat(Rational(2), 128), 128);
    std::cout << "AGM(1,2) = " << agm.to_string(35) << "\n";
}
