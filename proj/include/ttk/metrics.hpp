#pragma once

#include "ttk/tensor.hpp"

namespace ttk {

/// ‖a - ahat‖_F / ‖a‖_F
double relative_error(const DenseTensor& a, const DenseTensor& ahat);

/// 10·log10( size · max|ahat|² / ‖a - ahat‖_F² ), the peak taken over ahat.
/// Returns +inf when the tensors are identical.
double psnr(const DenseTensor& a, const DenseTensor& ahat);

}  // namespace ttk
