#ifndef GRIDKIT_FUNCTION_INTERPOLATION_HH
#define GRIDKIT_FUNCTION_INTERPOLATION_HH

#include <functional>
#include <vector>

#include <gridkit/common/fieldvector.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/mapper/mcmgmapper.hh>

namespace gridkit
{

  struct P1Interpolation
  {
    MCMGMapper mapper;
    std::vector< double > data;

    GridFunction function () const { return p1Function( mapper, data ); }
  };

  //! nodal interpolation: data[index(v)] = f(position of v)
  inline P1Interpolation interpolateP1 ( const GridView &view, const std::function< double( const FieldVector & ) > &f )
  {
    P1Interpolation result{ mapper( view, std::map< GeometryType, int >{ { vertex, 1 } } ), {} };
    result.data.assign( result.mapper.size(), 0.0 );
    for( const Entity &v : view.vertices() )
      result.data[ result.mapper.index( v ) ] = f( v.geometry().center() );
    return result;
  }

  //! nodal interpolation of the first component of a world-coordinate grid function
  inline P1Interpolation interpolateP1 ( const GridView &view, const GridFunction &f )
  {
    return interpolateP1( view, [ &f ] ( const FieldVector &x ) { return f.evalGlobal( x )[ 0 ]; } );
  }

} // namespace gridkit

#endif // GRIDKIT_FUNCTION_INTERPOLATION_HH
