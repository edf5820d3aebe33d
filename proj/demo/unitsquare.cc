#include <iostream>

#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/simplexgrid.hh>

// two triangles on the unit square: sizes and entity corners per codim
int main ()
{
  using namespace gridkit;
  SimplexGridData data;
  data.vertices = { FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 0.0 }, FieldVector{ 1.0, 1.0 }, FieldVector{ 0.0, 1.0 } };
  data.simplices = { { 2, 0, 1 }, { 0, 2, 3 } };
  const GridView unitSquare = simplexGrid( data );
  std::cout << unitSquare.size( 0 ) << " elements and " << unitSquare.size( 2 ) << " vertices\n";

  for( int codim = 0; codim <= unitSquare.dimension(); ++codim )
    for( const Entity &entity : unitSquare.entities( codim ) )
    {
      const auto geometry = entity.geometry();
      for( std::size_t i = 0; i < geometry.corners().size(); ++i )
        std::cout << ( i ? ", " : "" ) << geometry.corner( i );
      std::cout << '\n';
    }
}
