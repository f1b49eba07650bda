#include "koszul/linalg.hpp"
#include "koszul/linalg_serial.hpp"

// Kernels are header templates; this TU pins a few common instantiations so
// client code links fast.
namespace koszul::linalg {

template Mat<Fp::Elt> mul<Fp>(const Fp&, const Mat<Fp::Elt>&, const Mat<Fp::Elt>&);
template Mat<ZZ::Elt> mul<ZZ>(const ZZ&, const Mat<ZZ::Elt>&, const Mat<ZZ::Elt>&);
template Mat<QQ::Elt> mul<QQ>(const QQ&, const Mat<QQ::Elt>&, const Mat<QQ::Elt>&);
template Echelon<Fp> rref<Fp>(const Fp&, const Mat<Fp::Elt>&);
template Echelon<QQ> rref<QQ>(const QQ&, const Mat<QQ::Elt>&);

} // namespace koszul::linalg
