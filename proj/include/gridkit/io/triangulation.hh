#ifndef GRIDKIT_IO_TRIANGULATION_HH
#define GRIDKIT_IO_TRIANGULATION_HH

#include <array>
#include <vector>

#include <gridkit/common/array2.hh>
#include <gridkit/common/exceptions.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/io/subsampling.hh>

namespace gridkit
{

  //! triangles over a point list, for plotting
  struct Triangulation
  {
    Array2 points;
    std::vector< std::array< int, 3 > > triangles;
  };

  namespace Impl
  {

    //! triangles covering a cell with corners in reference order
    inline void splitCell ( GeometryType type, const std::vector< int > &c, std::vector< std::array< int, 3 > > &out )
    {
      if( type.isTriangle() )
        out.push_back( { c[ 0 ], c[ 1 ], c[ 2 ] } );
      else if( type.isQuadrilateral() )
      {
        out.push_back( { c[ 0 ], c[ 1 ], c[ 3 ] } );
        out.push_back( { c[ 0 ], c[ 3 ], c[ 2 ] } );
      }
      else
        throw CapabilityError( "triangulation: cannot split " + type.name() );
    }

    inline void checkPlanar ( const GridView &view )
    {
      if( view.dimension() != 2 )
        throw CapabilityError( "triangulation: only available for two dimensional grids" );
    }

  } // namespace Impl

  /** \brief triangulation of a 2d grid view
   *
   *  Level 0 uses the leaf vertices (in index order) and splits
   *  quadrilaterals into two triangles. Level l > 0 subdivides every element
   *  separately, so points on element borders appear once per element.
   */
  inline Triangulation triangulation ( const GridView &view, int level = 0 )
  {
    Impl::checkPlanar( view );
    if( level < 0 )
      throw DomainError( "triangulation: negative level" );
    Triangulation t;
    const IndexSet indexSet = view.indexSet();
    if( level == 0 )
    {
      t.points = view.coordinates();
      for( const Entity &e : view.elements() )
      {
        const auto v = indexSet.subIndices( e, 2 );
        Impl::splitCell( e.type(), v, t.triangles );
      }
      return t;
    }

    std::vector< double > coords;
    int offset = 0;
    for( const Entity &e : view.elements() )
    {
      const RefinedReference ref = refineReference( e.type(), level );
      const AffineGeometry geo = e.geometry();
      for( const auto &x : ref.points )
      {
        const FieldVector y = geo.toGlobal( x );
        coords.push_back( y[ 0 ] );
        coords.push_back( y[ 1 ] );
      }
      for( auto cell : ref.cells )
      {
        for( int &c : cell )
          c += offset;
        Impl::splitCell( ref.cellType, cell, t.triangles );
      }
      offset += static_cast< int >( ref.points.size() );
    }
    const std::size_t rows = coords.size() / 2;
    t.points = Array2( rows, 2, std::move( coords ) );
    return t;
  }

} // namespace gridkit

#endif // GRIDKIT_IO_TRIANGULATION_HH
