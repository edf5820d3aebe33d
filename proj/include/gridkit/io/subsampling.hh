#ifndef GRIDKIT_IO_SUBSAMPLING_HH
#define GRIDKIT_IO_SUBSAMPLING_HH

#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/geometry/type.hh>

namespace gridkit
{

  /** \brief uniform subdivision of a reference element
   *
   *  Level l splits every edge into 2^l pieces. Triangles are cut into
   *  4^l triangles, cubes into 2^(l*dim) cubes (corners in reference
   *  order).
   */
  struct RefinedReference
  {
    GeometryType cellType;
    std::vector< FieldVector > points;
    std::vector< std::vector< int > > cells;
  };

  inline RefinedReference refineReference ( GeometryType type, int level )
  {
    if( level < 0 )
      throw DomainError( "refineReference: negative level" );
    if( level > 12 )
      throw DomainError( "refineReference: level too large" );
    const int n = 1 << level;
    const int dim = type.dim();
    RefinedReference r{ type, {}, {} };

    if( dim == 0 )
    {
      r.points.push_back( FieldVector( 0 ) );
      r.cells.push_back( { 0 } );
    }
    else if( type.isTriangle() )
    {
      // point (i,j), i+j <= n, stored row by row in j
      auto id = [ n ] ( int i, int j ) { return j*( n+1 ) - j*( j-1 ) / 2 + i; };
      for( int j = 0; j <= n; ++j )
        for( int i = 0; i + j <= n; ++i )
          r.points.push_back( FieldVector{ double( i ) / n, double( j ) / n } );
      for( int j = 0; j < n; ++j )
        for( int i = 0; i + j < n; ++i )
        {
          r.cells.push_back( { id( i, j ), id( i+1, j ), id( i, j+1 ) } );
          if( i + j < n-1 )
            r.cells.push_back( { id( i+1, j ), id( i+1, j+1 ), id( i, j+1 ) } );
        }
    }
    else if( type.isCube() )
    {
      int numPoints = 1, numCells = 1;
      for( int k = 0; k < dim; ++k )
      {
        numPoints *= n+1;
        numCells *= n;
      }
      for( int p = 0; p < numPoints; ++p )
      {
        FieldVector x( dim );
        for( int k = 0, rest = p; k < dim; ++k, rest /= n+1 )
          x[ k ] = double( rest % ( n+1 ) ) / n;
        r.points.push_back( x );
      }
      for( int c = 0; c < numCells; ++c )
      {
        std::vector< int > idx( dim );
        for( int k = 0, rest = c; k < dim; ++k, rest /= n )
          idx[ k ] = rest % n;
        std::vector< int > corners;
        for( int corner = 0; corner < ( 1 << dim ); ++corner )
        {
          int p = 0, stride = 1;
          for( int k = 0; k < dim; ++k, stride *= n+1 )
            p += ( idx[ k ] + ( ( corner >> k ) & 1 ) ) * stride;
          corners.push_back( p );
        }
        r.cells.push_back( std::move( corners ) );
      }
    }
    else
      throw CapabilityError( "refineReference: " + type.name() + " not supported" );
    return r;
  }

} // namespace gridkit

#endif // GRIDKIT_IO_SUBSAMPLING_HH
