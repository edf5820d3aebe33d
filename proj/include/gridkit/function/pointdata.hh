#ifndef GRIDKIT_FUNCTION_POINTDATA_HH
#define GRIDKIT_FUNCTION_POINTDATA_HH

#include <vector>

#include <gridkit/common/array2.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/io/subsampling.hh>

namespace gridkit
{

  namespace Impl
  {

    //! values at the vertices; each vertex is evaluated in the first element containing it
    inline Array2 vertexValues ( const GridFunction &f )
    {
      const GridView &view = f.gridView();
      const int dim = view.dimension();
      const IndexSet indexSet = view.indexSet();
      const int r = f.rangeDimension();
      Array2 values( view.size( dim ), r );
      std::vector< char > done( view.size( dim ), 0 );
      for( const Entity &e : view.elements() )
      {
        const auto v = indexSet.subIndices( e, dim );
        const auto &ref = e.referenceElement();
        std::vector< FieldVector > local;
        std::vector< int > target;
        for( std::size_t i = 0; i < v.size(); ++i )
          if( !done[ v[ i ] ] )
          {
            done[ v[ i ] ] = 1;
            local.push_back( ref.corner( i ) );
            target.push_back( v[ i ] );
          }
        if( local.empty() )
          continue;
        const Array2 y = f.evaluate( e, local );
        for( std::size_t q = 0; q < target.size(); ++q )
          for( int k = 0; k < r; ++k )
            values( target[ q ], k ) = y( q, k );
      }
      return values;
    }

    //! values at the points of the per element subdivision of the given level
    inline Array2 subsampledValues ( const GridFunction &f, int level )
    {
      const int r = f.rangeDimension();
      std::vector< double > data;
      for( const Entity &e : f.gridView().elements() )
      {
        const RefinedReference ref = refineReference( e.type(), level );
        const Array2 y = f.evaluate( e, ref.points );
        data.insert( data.end(), y.data().begin(), y.data().end() );
      }
      const std::size_t rows = data.size() / r;
      return Array2( rows, r, std::move( data ) );
    }

  } // namespace Impl

  /** \brief values of f at the points of triangulation(view, level)
   *
   *  Rows are aligned with the triangulation points.
   */
  inline Array2 pointData ( const GridFunction &f, int level = 0 )
  {
    if( level < 0 )
      throw DomainError( "pointData: negative level" );
    if( level == 0 )
      return Impl::vertexValues( f );
    return Impl::subsampledValues( f, level );
  }

} // namespace gridkit

#endif // GRIDKIT_FUNCTION_POINTDATA_HH
