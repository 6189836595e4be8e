#include "graphdim/kernels.hpp"

#include <cstdlib>

namespace graphdim::kernels {

const Dispatch* avx2_dispatch();
const Dispatch* neon_dispatch();

namespace {

const Dispatch& select() {
  if (const char* env = std::getenv("GRAPHDIM_KERNELS")) {
    if (const Dispatch* d = variant(env)) return *d;
    return scalar();  // unknown or unsupported name: fall back
  }
  if (const Dispatch* d = avx2_dispatch()) return *d;
  if (const Dispatch* d = neon_dispatch()) return *d;
  return scalar();
}

}  // namespace

const Dispatch& active() {
  static const Dispatch& d = select();
  return d;
}

const Dispatch* variant(std::string_view name) {
  if (name == "scalar") return &scalar();
  if (name == "avx2") return avx2_dispatch();
  if (name == "neon") return neon_dispatch();
  return nullptr;
}

}  // namespace graphdim::kernels
