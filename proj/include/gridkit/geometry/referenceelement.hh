#ifndef GRIDKIT_GEOMETRY_REFERENCEELEMENT_HH
#define GRIDKIT_GEOMETRY_REFERENCEELEMENT_HH

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include <gridkit/common/fieldvector.hh>
#include <gridkit/geometry/type.hh>

namespace gridkit
{

  /** \brief topology and corner coordinates of a reference element
   *
   *  Numbering follows the usual conventions of grid libraries:
   *  - simplex corners are the origin followed by the unit vectors,
   *    triangle edges are {0,1}, {0,2}, {1,2};
   *  - cube corners are enumerated with the first coordinate running
   *    fastest, and a codim-c subentity is given by c fixed directions
   *    (subsets in lexicographic order) and their values (lowest fixed
   *    direction fastest).
   */
  class ReferenceElement
  {
  public:
    explicit ReferenceElement ( GeometryType type )
      : type_( type ), sub_( type.dim()+1 )
    {
      if( type.dim() < 0 || type.dim() > 3 )
        throw DomainError( "ReferenceElement: unsupported dimension" );
      if( type.isSimplex() )
        buildSimplex();
      else
        buildCube();
    }

    GeometryType type () const noexcept { return type_; }
    int dimension () const noexcept { return type_.dim(); }

    //! all corners in reference numbering (the plural returns the collection)
    const std::vector< FieldVector > &corners () const noexcept { return corners_; }
    const FieldVector &corner ( int i ) const { return corners_.at( i ); }

    //! number of subentities of codimension \p codim
    int size ( int codim ) const
    {
      checkCodim( codim );
      return static_cast< int >( sub_[ codim ].size() );
    }

    //! number of corners of subentity (i,codim) (the C++-style singular accessor)
    int size ( int i, int codim ) const { return static_cast< int >( subEntity( i, codim ).corners.size() ); }

    //! corner numbers of subentity i of codimension codim
    const std::vector< int > &subEntityCorners ( int i, int codim ) const { return subEntity( i, codim ).corners; }

    GeometryType type ( int i, int codim ) const { return subEntity( i, codim ).type; }

    //! barycenter of subentity (i,codim) in reference coordinates
    FieldVector position ( int i, int codim ) const
    {
      const auto &corners = subEntityCorners( i, codim );
      FieldVector c( dimension() );
      for( int k : corners )
        c += corners_[ k ];
      return c / double( corners.size() );
    }

    FieldVector center () const { return position( 0, 0 ); }

    double volume () const
    {
      double v = 1.0;
      if( type_.isSimplex() )
        for( int k = 2; k <= dimension(); ++k )
          v /= double( k );
      return v;
    }

    bool checkInside ( const FieldVector &x, double tolerance = 1e-12 ) const
    {
      if( x.size() != dimension() )
        return false;
      double sum = 0.0;
      for( int k = 0; k < dimension(); ++k )
      {
        if( x[ k ] < -tolerance )
          return false;
        if( type_.isCube() && x[ k ] > 1.0 + tolerance )
          return false;
        sum += x[ k ];
      }
      return !type_.isSimplex() || dimension() <= 1 || sum <= 1.0 + tolerance;
    }

  private:
    struct SubEntity
    {
      GeometryType type;
      std::vector< int > corners;
    };

    void checkCodim ( int codim ) const
    {
      if( codim < 0 || codim > dimension() )
        throw DomainError( "ReferenceElement: codim " + std::to_string( codim ) + " out of range for " + type_.name() );
    }

    const SubEntity &subEntity ( int i, int codim ) const
    {
      checkCodim( codim );
      if( i < 0 || i >= static_cast< int >( sub_[ codim ].size() ) )
        throw DomainError( "ReferenceElement: subentity " + std::to_string( i ) + " of codim " + std::to_string( codim ) + " out of range" );
      return sub_[ codim ][ i ];
    }

    void buildSimplex ()
    {
      const int d = dimension();
      corners_.assign( d+1, FieldVector( d ) );
      for( int k = 1; k <= d; ++k )
        corners_[ k ][ k-1 ] = 1.0;

      // subentity corner sets in the conventional order
      static const std::vector< std::vector< std::vector< int > > > tables[ 4 ] = {
        { { { 0 } } },
        { { { 0, 1 } }, { { 0 }, { 1 } } },
        { { { 0, 1, 2 } }, { { 0, 1 }, { 0, 2 }, { 1, 2 } }, { { 0 }, { 1 }, { 2 } } },
        { { { 0, 1, 2, 3 } },
          { { 0, 1, 2 }, { 0, 1, 3 }, { 0, 2, 3 }, { 1, 2, 3 } },
          { { 0, 1 }, { 0, 2 }, { 1, 2 }, { 0, 3 }, { 1, 3 }, { 2, 3 } },
          { { 0 }, { 1 }, { 2 }, { 3 } } }
      };
      for( int c = 0; c <= d; ++c )
        for( const auto &corners : tables[ d ][ c ] )
          sub_[ c ].push_back( { simplex( d-c ), corners } );
    }

    // a d-cube is the prism over the (d-1)-cube in direction d-1: extruded
    // subentities of the base first, then bottom copies, then top copies
    static std::vector< std::vector< int > > cubeSubEntities ( int d, int c )
    {
      if( d == 0 )
        return { { 0 } };
      const int shift = 1 << ( d-1 );
      std::vector< std::vector< int > > result;
      if( c < d )
        for( auto s : cubeSubEntities( d-1, c ) )
        {
          const std::size_t n = s.size();
          for( std::size_t k = 0; k < n; ++k )
            s.push_back( s[ k ] + shift );
          result.push_back( std::move( s ) );
        }
      if( c > 0 )
      {
        const auto base = cubeSubEntities( d-1, c-1 );
        for( int top = 0; top < 2; ++top )
          for( auto s : base )
          {
            for( int &k : s )
              k += top * shift;
            result.push_back( std::move( s ) );
          }
      }
      return result;
    }

    void buildCube ()
    {
      const int d = dimension();
      const int n = 1 << d;
      corners_.assign( n, FieldVector( d ) );
      for( int k = 0; k < n; ++k )
        for( int j = 0; j < d; ++j )
          corners_[ k ][ j ] = ( k >> j ) & 1;

      for( int c = 0; c <= d; ++c )
        for( auto &corners : cubeSubEntities( d, c ) )
          sub_[ c ].push_back( SubEntity{ cube( d-c ), std::move( corners ) } );
    }

    GeometryType type_;
    std::vector< FieldVector > corners_;
    std::vector< std::vector< SubEntity > > sub_;
  };

  //! cached reference element for a geometry type
  inline const ReferenceElement &referenceElement ( GeometryType type )
  {
    if( type.dim() < 0 || type.dim() > 3 )
      throw DomainError( "referenceElement: unsupported geometry type" );
    static const std::array< ReferenceElement, 6 > elements = {
      ReferenceElement( simplex( 0 ) ), ReferenceElement( simplex( 1 ) ),
      ReferenceElement( simplex( 2 ) ), ReferenceElement( cube( 2 ) ),
      ReferenceElement( simplex( 3 ) ), ReferenceElement( cube( 3 ) )
    };
    switch( type.dim() )
    {
    case 0: return elements[ 0 ];
    case 1: return elements[ 1 ];
    case 2: return type.isSimplex() ? elements[ 2 ] : elements[ 3 ];
    default: return type.isSimplex() ? elements[ 4 ] : elements[ 5 ];
    }
  }

} // namespace gridkit

#endif // GRIDKIT_GEOMETRY_REFERENCEELEMENT_HH
