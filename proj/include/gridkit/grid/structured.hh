#ifndef GRIDKIT_GRID_STRUCTURED_HH
#define GRIDKIT_GRID_STRUCTURED_HH

#include <memory>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/hierarchicalgrid.hh>

namespace gridkit
{

  //! axis-aligned box with a number of cells per axis
  struct CartesianDomain
  {
    FieldVector lower;
    FieldVector upper;
    std::vector< int > cells;

    int dimension () const noexcept { return lower.size(); }
  };

  inline CartesianDomain cartesianDomain ( const FieldVector &lower, const FieldVector &upper, std::vector< int > cells )
  {
    const int dim = lower.size();
    if( dim < 1 || dim > 3 )
      throw DomainError( "cartesianDomain: dimension must be 1, 2 or 3" );
    if( upper.size() != dim || static_cast< int >( cells.size() ) != dim )
      throw DomainError( "cartesianDomain: lower, upper and cells differ in length" );
    for( int k = 0; k < dim; ++k )
    {
      if( !( upper[ k ] > lower[ k ] ) )
        throw DomainError( "cartesianDomain: upper bound not above lower bound in direction " + std::to_string( k ) );
      if( cells[ k ] < 1 )
        throw DomainError( "cartesianDomain: need at least one cell in direction " + std::to_string( k ) );
    }
    return { lower, upper, std::move( cells ) };
  }



  /** \brief Cartesian grid of cubes
   *
   *  Vertices and cells are numbered lexicographically with the first
   *  direction running fastest. A refinement step halves every cell.
   */
  class StructuredGrid : public HierarchicalGrid
  {
  public:
    explicit StructuredGrid ( CartesianDomain domain )
      : domain_( cartesianDomain( domain.lower, domain.upper, domain.cells ) )
    {
      build();
    }

    std::string implementation () const override { return "structured"; }
    int maxLevel () const override { return level_; }

    void globalRefine ( int n = 1 ) override
    {
      if( n < 0 )
        throw DomainError( "globalRefine: negative refinement count" );
      for( int i = 0; i < n; ++i )
      {
        for( int &c : cells_ )
          c *= 2;
        ++level_;
      }
      if( n > 0 )
        build();
    }

    const CartesianDomain &domain () const noexcept { return domain_; }
    const std::vector< int > &cells () const noexcept { return cells_; }

  private:
    void build ()
    {
      if( cells_.empty() )
        cells_ = domain_.cells;
      const int dim = domain_.dimension();

      std::vector< int > nv( dim );
      int numVertices = 1, numCells = 1;
      for( int k = 0; k < dim; ++k )
      {
        nv[ k ] = cells_[ k ] + 1;
        numVertices *= nv[ k ];
        numCells *= cells_[ k ];
      }

      LeafElements elements;
      elements.dimension = dim;
      elements.coordinates.reserve( numVertices );
      for( int v = 0; v < numVertices; ++v )
      {
        FieldVector x( dim );
        int rest = v;
        for( int k = 0; k < dim; ++k )
        {
          const int i = rest % nv[ k ];
          rest /= nv[ k ];
          const double h = ( domain_.upper[ k ] - domain_.lower[ k ] ) / cells_[ k ];
          x[ k ] = ( i == cells_[ k ] ) ? domain_.upper[ k ] : domain_.lower[ k ] + i * h;
        }
        elements.coordinates.push_back( x );
      }

      const GeometryType type = cube( dim );
      std::vector< int > corners( 1 << dim );
      for( int c = 0; c < numCells; ++c )
      {
        std::vector< int > idx( dim );
        int rest = c;
        for( int k = 0; k < dim; ++k )
        {
          idx[ k ] = rest % cells_[ k ];
          rest /= cells_[ k ];
        }
        for( int corner = 0; corner < ( 1 << dim ); ++corner )
        {
          int v = 0, stride = 1;
          for( int k = 0; k < dim; ++k )
          {
            v += ( idx[ k ] + ( ( corner >> k ) & 1 ) ) * stride;
            stride *= nv[ k ];
          }
          corners[ corner ] = v;
        }
        elements.add( type, corners, level_ );
      }
      setLeaf( std::move( elements ) );
    }

    CartesianDomain domain_;
    std::vector< int > cells_;
    int level_ = 0;
  };

  inline GridView structuredGrid ( const CartesianDomain &domain )
  {
    return GridView( std::make_shared< StructuredGrid >( domain ) );
  }

  inline GridView structuredGrid ( const FieldVector &lower, const FieldVector &upper, std::vector< int > cells )
  {
    return structuredGrid( cartesianDomain( lower, upper, std::move( cells ) ) );
  }

} // namespace gridkit

#endif // GRIDKIT_GRID_STRUCTURED_HH
