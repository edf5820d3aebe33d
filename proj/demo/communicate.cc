#include <iostream>

#include <gridkit/grid/structured.hh>
#include <gridkit/parallel/minrank.hh>

// each vertex gets the smallest rank holding a copy, five simulated ranks
int main ()
{
  using namespace gridkit;
  const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 20, 20 } );
  const MinRankDemo demo( view, 5 );
  for( int r = 0; r < 5; ++r )
    std::cout << "rank " << r << ": " << demo.ranks[ r ].count( 0, PartitionType::interior ) << " interior and "
              << demo.ranks[ r ].count( 0, PartitionType::ghost ) << " ghost elements\n";
  std::cout << "shared vertices: " << demo.sharedVertices() << ", violations: " << demo.violations() << '\n';
  demo.writeCSV( std::cout );
}
