#include "fsrs/lineshape.hpp"

#include "fsrs/errors.hpp"

namespace fsrs::response {

namespace {
using cplx = std::complex<double>;

cplx evaluate(cplx a, cplx b) {
    const double tiny = 1e-12;
    if (std::abs(a) < tiny || std::abs(b) < tiny || std::abs(a + b) < tiny)
        throw ComputeError("f_function: pole in the closed form; a lossless configuration "
                           "(zero width and zero dephasing) is unphysical here");
    return (1.0 / a) * (1.0 / b - 1.0 / (a + b));
}
}  // namespace

cplx f_function(double v, cplx xi, double s2, double s3, double delta) {
    return f_function_mode(v, xi, s2, s3, delta, cplx(0.0, 0.0));
}

cplx f_function_mode(double v, cplx xi, double s2, double s3, double delta, cplx lambda) {
    const cplx im(0.0, 1.0);
    const cplx a = im * (delta + xi) - 1.0 / s2 - 1.0 / s3 + lambda;
    const cplx b = im * (v - xi) - 1.0 / s2;
    return evaluate(a, b);
}

}  // namespace fsrs::response
