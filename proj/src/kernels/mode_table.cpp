#include "gravnoise/kernels.hpp"

namespace gravnoise::kernels {

void ModeTable::reserve(std::size_t n) {
  for (auto* v : {&omega, &nx, &ny, &nz, &phase0, &e11, &e12, &e13, &e22, &e23, &e33}) {
    v->reserve(n);
  }
}

void ModeTable::push_back(double w, const double n[3], double phi0, const double e[6]) {
  omega.push_back(w);
  nx.push_back(n[0]);
  ny.push_back(n[1]);
  nz.push_back(n[2]);
  phase0.push_back(phi0);
  e11.push_back(e[0]);
  e12.push_back(e[1]);
  e13.push_back(e[2]);
  e22.push_back(e[3]);
  e23.push_back(e[4]);
  e33.push_back(e[5]);
}

}  // namespace gravnoise::kernels
