#include <cmath>
#include <iostream>

#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/io/vtk.hh>
#include <gridkit/schemes/lagrangeerror.hh>

// bisection grid refined towards the origin, one vtu file per stage
int main ()
{
  using namespace gridkit;
  GridView view = conformGrid( fanGridData() );
  auto &grid = view.hierarchicalGrid();
  grid.globalRefine( 2 );
  std::cout << "start: " << view.size( 0 ) << " elements\n";
  writeVTK( view, "localrefinement-0" );
  for( int i = 1; i < 5; ++i )
  {
    grid.adapt( [ i ] ( const Entity &e ) {
      return e.geometry().center().two_norm() < std::pow( 0.64, i ) ? Marker::refine : Marker::keep;
    } );
    std::cout << "round " << i << ": " << view.size( 0 ) << " elements\n";
    writeVTK( view, "localrefinement-" + std::to_string( i ) );
  }

  // quartering grid on top of the adapted leaf
  const GridView alu = simplexGrid( leafGridData( view ) );
  std::cout << "quartering grid: " << alu.size( 0 ) << " elements, " << alu.size( 2 ) << " vertices\n";
}
