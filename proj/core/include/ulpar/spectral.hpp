#pragma once

#include <complex>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

#include "ulpar/field.hpp"

namespace ulpar {

using cplx = std::complex<double>;

// Half spectrum of a Field: (n/2 + 1) x M complex coefficients, row-major,
// unnormalized forward transform along x for every mode column.
struct Spectrum {
  Grid1D grid;
  std::size_t modes;
  std::vector<cplx> data;

  cplx& at(std::size_t m, std::size_t j) { return data[m * modes + j]; }
  const cplx& at(std::size_t m, std::size_t j) const { return data[m * modes + j]; }
};

Spectrum forward(const Field& u);
Field inverse(const Spectrum& s);

// Raw interface on row-major [n x M] arrays. Thread safe.
void fft_forward(std::size_t n, std::size_t modes, const double* in, cplx* out);
// Normalized inverse (includes the 1/n factor). Does not modify `in`.
void fft_inverse(std::size_t n, std::size_t modes, const cplx* in, double* out);

// d^order/dx^order. The Nyquist mode is dropped for odd orders.
Field derivative(const Field& u, int order);

// Multiply the half spectrum by a real symbol sym[m * M + j].
Field apply_symbol(const Field& u, const std::vector<double>& sym);
Field apply_symbol(const Field& u, const std::function<double(double kappa, std::size_t j)>& sym);

// Complex field stored as a pair of real fields.
struct ComplexField {
  Field re;
  Field im;
};

// Multiply by a complex symbol that is even in kappa.
ComplexField apply_symbol(const ComplexField& u, const std::vector<cplx>& sym);

// Spectral interpolation to a finer grid of n_fine nodes (zero padding).
std::vector<double> pad_to(const Field& u, std::size_t n_fine);
// Truncate a fine-grid sample array back to the grid of `like`.
Field truncate_from(const std::vector<double>& fine, std::size_t n_fine, const Field& like);

}  // namespace ulpar

namespace ulpar {

// Real field whose x-spectrum is supported on |m| <= max_index, with
// Gaussian coefficients decaying like 1/(1 + m^2), scaled to the given max amplitude.
Field random_smooth_field(const Grid1D& g, std::size_t modes, std::uint64_t seed, std::size_t max_index,
                          double amplitude);

}  // namespace ulpar
