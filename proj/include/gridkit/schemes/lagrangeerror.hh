#ifndef GRIDKIT_SCHEMES_LAGRANGEERROR_HH
#define GRIDKIT_SCHEMES_LAGRANGEERROR_HH

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include <gridkit/common/array2.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/function/interpolation.hh>
#include <gridkit/geometry/quadrature.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/schemes/l2norm.hh>

namespace gridkit
{

  //! six triangles fanning around the origin on [-1,1]x[-0.6,0.6]
  inline SimplexGridData fanGridData ()
  {
    SimplexGridData data;
    data.vertices = { FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 0.0 }, FieldVector{ 1.0, 0.6 }, FieldVector{ 0.0, 0.6 },
                      FieldVector{ -1.0, 0.6 }, FieldVector{ -1.0, 0.0 }, FieldVector{ -1.0, -0.6 }, FieldVector{ 0.0, -0.6 } };
    data.simplices = { { 2, 0, 1 }, { 0, 2, 3 }, { 4, 0, 3 }, { 0, 4, 5 }, { 6, 0, 5 }, { 0, 6, 7 } };
    return data;
  }

  //! cos(2 pi / (0.3 + |x0 x1|))
  inline double oscillatingFunction ( const FieldVector &x )
  {
    return std::cos( 2.0 * std::numbers::pi / ( 0.3 + std::abs( x[ 0 ] * x[ 1 ] ) ) );
  }

  /** \brief two global bisections followed by four rounds of local refinement
   *
   *  Round i refines the elements whose center lies within 0.64^i of the
   *  origin.
   */
  inline void refineTowardsOrigin ( HierarchicalGrid &grid )
  {
    grid.globalRefine( 2 );
    for( int i = 1; i <= 4; ++i )
    {
      const double radius = std::pow( 0.64, i );
      grid.adapt( [ radius ] ( const Entity &e ) {
        return e.geometry().center().two_norm() < radius ? Marker::refine : Marker::keep;
      } );
    }
  }

  //! vertex coordinates and element corner indices of a triangular leaf view
  inline SimplexGridData leafGridData ( const GridView &view )
  {
    SimplexGridData data;
    const Array2 coords = view.coordinates();
    for( std::size_t i = 0; i < coords.rows(); ++i )
      data.vertices.push_back( FieldVector( coords.row( i ) ) );
    const IndexSet indexSet = view.indexSet();
    for( const Entity &e : view.elements() )
    {
      const auto idx = indexSet.subIndices( e, 2 );
      if( idx.size() != 3 )
        throw CapabilityError( "leafGridData: only triangles are supported" );
      data.simplices.push_back( { idx[ 0 ], idx[ 1 ], idx[ 2 ] } );
    }
    return data;
  }

  //! macro grid for the quartering grid: the locally refined fan
  inline SimplexGridData refinedFanGridData ()
  {
    GridView conform = conformGrid( fanGridData() );
    refineTowardsOrigin( conform.hierarchicalGrid() );
    return leafGridData( conform );
  }

  /** \brief piecewise linear interpolation of the oscillating function
   *
   *  The grid is the quartering grid over the locally refined fan, refined
   *  globally the requested number of times. error() is |u_h - u| as a
   *  local grid function evaluated in batches.
   */
  class LagrangeInterpolationError
  {
  public:
    explicit LagrangeInterpolationError ( int refine = 0 )
      : LagrangeInterpolationError( simplexGrid( refinedFanGridData() ), refine )
    {}

    LagrangeInterpolationError ( GridView view, int refine )
      : view_( std::move( view ) )
    {
      view_.hierarchicalGrid().globalRefine( refine );
      interpolation_ = interpolateP1( view_, oscillatingFunction );
      uh_ = interpolation_.function();
      error_ = GridFunction::fromLocal( view_, [ uh = uh_ ] ( const Entity &e, std::span< const FieldVector > x ) {
        const Array2 v = uh.evaluate( e, x );
        const auto world = e.geometry().toGlobal( x );
        Array2 result( x.size(), 1 );
        for( std::size_t q = 0; q < x.size(); ++q )
          result( q, 0 ) = std::abs( v( q, 0 ) - oscillatingFunction( world[ q ] ) );
        return result;
      }, 1 );
    }

    const GridView &gridView () const noexcept { return view_; }
    const P1Interpolation &interpolation () const noexcept { return interpolation_; }
    const GridFunction &interpolant () const noexcept { return uh_; }
    const GridFunction &error () const noexcept { return error_; }

    double maxBarycenterError () const
    {
      const FieldVector center{ 1.0 / 3.0, 1.0 / 3.0 };
      double result = 0.0;
      for( const Entity &e : view_.elements() )
        result = std::max( result, error_( e, center )[ 0 ] );
      return result;
    }

    double l2Error ( int order, EvaluationMode mode ) const
    {
      return std::sqrt( l2Norm2( view_, error_, QuadratureRules( order ), mode ) );
    }

    //! same quantity computed without any grid function calls
    double l2ErrorKernel ( int order ) const
    {
      const QuadratureRules rules( order );
      const int dim = view_.dimension();
      double sum = 0.0;
      for( const Entity &e : view_.elements() )
      {
        const AffineGeometry geometry = e.geometry();
        const auto &[ positions, weights ] = rules( e.type() ).get();
        const auto idx = interpolation_.mapper.subIndices( e, dim );
        for( std::size_t q = 0; q < positions.size(); ++q )
        {
          const auto phi = p1Basis( e.type(), positions[ q ] );
          double uh = 0.0;
          for( std::size_t i = 0; i < phi.size(); ++i )
            uh += phi[ i ] * interpolation_.data[ idx[ i ] ];
          const FieldVector &x = positions[ q ];
          const double d = std::abs( uh - oscillatingFunction( geometry.toGlobal( x ) ) );
          sum += d * d * weights[ q ] * geometry.integrationElement( x );
        }
      }
      return std::sqrt( sum );
    }

  private:
    GridView view_;
    P1Interpolation interpolation_;
    GridFunction uh_;
    GridFunction error_;
  };

} // namespace gridkit

#endif // GRIDKIT_SCHEMES_LAGRANGEERROR_HH
