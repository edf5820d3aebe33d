#include <iomanip>
#include <iostream>

#include <gridkit/io/vtk.hh>
#include <gridkit/schemes/lagrangeerror.hh>

// P1 interpolation of cos(2 pi/(0.3+|x0 x1|)) and its error
int main ()
{
  using namespace gridkit;
  std::cout << std::setprecision( 17 );

  const LagrangeInterpolationError coarse( 0 );
  std::cout << "max error at barycenters: " << coarse.maxBarycenterError() << '\n';

  const LagrangeInterpolationError fine( 4 );
  std::cout << "elements: " << fine.gridView().size( 0 ) << '\n';
  std::cout << "L2 error (loop):   " << fine.l2Error( 5, EvaluationMode::loop ) << '\n';
  std::cout << "L2 error (batch):  " << fine.l2Error( 5, EvaluationMode::batch ) << '\n';
  std::cout << "L2 error (kernel): " << fine.l2ErrorKernel( 5 ) << '\n';

  writeVTK( coarse.gridView(), "interpolation", { { "uh", coarse.interpolant() }, { "error", coarse.error() } }, {}, 2 );
}
