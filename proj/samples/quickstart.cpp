// Small tour: products, classes, coordinates and distances.

#include <iostream>

#include "stp/stp.hpp"

using namespace stp;
using Q = Rational;
using MatQ = Matrix<Rational>;

namespace {

void print(const char* label, const MatQ& m)
{
    std::cout << label << " (" << m.rows() << "x" << m.cols() << ")\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::cout << "  ";
        for (std::size_t c = 0; c < m.cols(); ++c) std::cout << scalar_traits<Q>::to_string(m(r, c)) << " ";
        std::cout << "\n";
    }
}

} // namespace

int main()
{
    const MatQ a{{1, 2}};
    const MatQ b{{3, 4}};
    print("[1 2] ltimes [3 4]", ltimes(a, b));
    print("[1 2] rtimes [3 4]", rtimes(a, b));

    const auto x = canonicalize(kron(MatQ{{1, Q(1, 2)}, {0, 3}}, MatQ::identity(4)));
    print("irreducible rep of A (x) I_4", x.rep());

    const auto d = canonicalize(MatQ::diagonal({2, 3}));
    std::cout << "coordinates of <diag(2,3)>:\n";
    for (const auto& [e, c] : decompose_class(d).terms) std::cout << "  " << to_string(e) << " -> " << c << "\n";

    const auto one = canonicalize(MatQ{{1}});
    std::cout << "dist(<diag(2,3)>, <[1]>)^2 = " << dist_squared(d, one) << "\n";
    print("[<diag(1,0)>, <[[0,1],[0,0]]>]",
          lie_bracket(canonicalize(MatQ::diagonal({1, 0})), canonicalize(MatQ{{0, 1}, {0, 0}})).rep());
}
