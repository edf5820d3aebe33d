#ifndef GRIDKIT_SCHEMES_FINITEVOLUME_HH
#define GRIDKIT_SCHEMES_FINITEVOLUME_HH

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <gridkit/common/array2.hh>
#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/mapper/mcmgmapper.hh>

namespace gridkit
{

  //! boundary and inflow data u(t, x)
  using TransportBoundary = std::function< double( double, const FieldVector & ) >;

  inline constexpr double defaultCfl = 0.45;

  //! piecewise constant solution of the linear transport problem
  struct FVState
  {
    MCMGMapper mapper;
    std::vector< double > data;
    double t = 0.0;
    double tau = 0.0;
  };

  //! diagnostics of a single time step
  struct FVStepReport
  {
    double tau = 0.0;
    //! total mass leaving through the boundary during the step (negative for net inflow)
    double boundaryFlux = 0.0;
    double boundaryMin = std::numeric_limits< double >::infinity();
    double boundaryMax = -std::numeric_limits< double >::infinity();
  };

  //! one index per element
  inline MCMGMapper elementMapper ( const GridView &view )
  {
    const int dim = view.dimension();
    return MCMGMapper( view, Layout::function( [ dim ] ( GeometryType gt ) { return gt.dim() == dim ? 1 : 0; } ) );
  }

  //! transport velocity (1, ..., 1)
  inline FieldVector transportVelocity ( int dim )
  {
    FieldVector b( dim );
    for( int k = 0; k < dim; ++k )
      b[ k ] = 1.0;
    return b;
  }

  //! cell values taken at the element centers
  inline FVState fvInitialize ( const GridView &view, const MCMGMapper &mapper, const GridFunction &c0 )
  {
    for( int codim = 0; codim <= view.dimension(); ++codim )
      for( GeometryType gt : view.indexSet().types( codim ) )
        if( mapper.blockSize( gt ) != ( codim == 0 ? 1 : 0 ) )
          throw DomainError( "fvInitialize: mapper must attach exactly one index to each element" );
    FVState state{ mapper, std::vector< double >( mapper.size(), 0.0 ), 0.0, 0.0 };
    for( const Entity &e : view.elements() )
      state.data[ mapper.index( e ) ] = c0( e, e.referenceElement().center() )[ 0 ];
    return state;
  }

  //! the cell values as a piecewise constant grid function
  inline GridFunction fvFunction ( const FVState &state )
  {
    return GridFunction::fromLocal( state.mapper.gridView(),
      [ mapper = state.mapper, data = state.data ] ( const Entity &e, std::span< const FieldVector > x ) {
        return Array2( x.size(), 1, data[ mapper.index( e ) ] );
      }, 1 );
  }

  //! sum of u_E |E|
  inline double fvMass ( const GridView &view, const FVState &state )
  {
    double mass = 0.0;
    for( const Entity &e : view.elements() )
      mass += state.data[ state.mapper.index( e ) ] * e.geometry().volume();
    return mass;
  }

  //! largest stable step: cfl * min_E |E| / sum of outflow facet fluxes of E
  inline double fvTimeStep ( const GridView &view, double cfl )
  {
    const FieldVector b = transportVelocity( view.dimension() );
    double tau = std::numeric_limits< double >::infinity();
    for( const Entity &e : view.elements() )
    {
      double outflow = 0.0;
      for( const Intersection &is : view.intersections( e ) )
        outflow += std::max( b.dot( is.centerUnitOuterNormal() ), 0.0 ) * is.area();
      if( outflow > 0.0 )
        tau = std::min( tau, e.geometry().volume() / outflow );
    }
    return cfl * tau;
  }

  /** \brief one explicit upwind step
   *
   *  Boundary facets take the outside value from boundary(t, facet center)
   *  at the start time of the step. Returns the step size.
   */
  inline double fvStep ( FVState &state, const GridView &view, const TransportBoundary &boundary, double cfl = defaultCfl,
                         FVStepReport *report = nullptr )
  {
    if( !( cfl > 0.0 ) )
      throw DomainError( "fvStep: cfl must be positive" );
    const FieldVector b = transportVelocity( view.dimension() );
    const double tau = fvTimeStep( view, cfl );
    if( !std::isfinite( tau ) )
      throw NumericError( "fvStep: no outflow facets, time step undefined" );

    FVStepReport r;
    r.tau = tau;
    std::vector< double > update( state.data.size(), 0.0 );
    for( const Entity &e : view.elements() )
    {
      const auto i = state.mapper.index( e );
      const double uIn = state.data[ i ];
      double flux = 0.0;
      for( const Intersection &is : view.intersections( e ) )
      {
        const double bn = b.dot( is.centerUnitOuterNormal() );
        double uOut;
        if( is.boundary() )
        {
          uOut = boundary( state.t, is.geometry().center() );
          r.boundaryMin = std::min( r.boundaryMin, uOut );
          r.boundaryMax = std::max( r.boundaryMax, uOut );
        }
        else
          uOut = state.data[ state.mapper.index( *is.outside() ) ];
        const double g = is.area() * ( std::max( bn, 0.0 ) * uIn + std::min( bn, 0.0 ) * uOut );
        flux += g;
        if( is.boundary() )
          r.boundaryFlux += tau * g;
      }
      update[ i ] = tau / e.geometry().volume() * flux;
    }
    for( std::size_t i = 0; i < update.size(); ++i )
      state.data[ i ] -= update[ i ];
    state.t += tau;
    state.tau = tau;
    if( report )
      *report = r;
    return tau;
  }

  using FVObserver = std::function< void( int step, const FVState &, const FVStepReport & ) >;

  //! steps until t >= tEnd; the last step is not shortened
  inline FVState fvRun ( const GridView &view, const GridFunction &c0, const TransportBoundary &boundary, double tEnd,
                         double cfl = defaultCfl, const FVObserver &observer = {} )
  {
    if( !( tEnd > 0.0 ) )
      throw DomainError( "fvRun: end time must be positive" );
    FVState state = fvInitialize( view, elementMapper( view ), c0 );
    for( int step = 1; state.t < tEnd; ++step )
    {
      FVStepReport report;
      fvStep( state, view, boundary, cfl, &report );
      if( observer )
        observer( step, state, report );
    }
    return state;
  }

  //! 1 in the annulus 0.125 < |x| < 0.5, 0 elsewhere
  inline double annulus ( const FieldVector &x )
  {
    const double r = x.two_norm();
    return ( r > 0.125 && r < 0.5 ) ? 1.0 : 0.0;
  }

  //! the annulus moved with the transport velocity, exact solution at time t
  inline double translatedAnnulus ( double t, const FieldVector &x )
  {
    return annulus( x - transportVelocity( x.size() ) * t );
  }

} // namespace gridkit

#endif // GRIDKIT_SCHEMES_FINITEVOLUME_HH
