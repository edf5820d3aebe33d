#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/grid/structured.hh>
#include <gridkit/schemes/cg.hh>
#include <gridkit/schemes/finitevolume.hh>
#include <gridkit/schemes/l2norm.hh>
#include <gridkit/schemes/lagrangeerror.hh>
#include <gridkit/schemes/p2fem.hh>
#include <gridkit/schemes/sparse.hh>

#include "oracles.hh"

using namespace gridkit;

namespace
{

  SparseMatrix diagonal ( const std::vector< double > &d )
  {
    SparseMatrix A( int( d.size() ), int( d.size() ) );
    for( std::size_t i = 0; i < d.size(); ++i )
      A.add( int( i ), int( i ), d[ i ] );
    A.finalize();
    return A;
  }

  std::array< std::array< double, 2 >, 3 > corners ( const AffineGeometry &g )
  {
    std::array< std::array< double, 2 >, 3 > p;
    for( int i = 0; i < 3; ++i )
      p[ i ] = { g.corner( i )[ 0 ], g.corner( i )[ 1 ] };
    return p;
  }

  GridView singleTriangle ( FieldVector a, FieldVector b, FieldVector c )
  {
    SimplexGridData data;
    data.vertices = { a, b, c };
    data.simplices = { { 0, 1, 2 } };
    return simplexGrid( data );
  }

  GridFunction constant ( const GridView &view, double value )
  {
    return gridFunctionFromGlobal( view, [ value ] ( const FieldVector & ) { return value; }, 1 );
  }

} // namespace

TEST( Sparse, AssemblyAndProduct )
{
  SparseMatrix A( 3, 3 );
  A.add( 0, 0, 2.0 );
  A.add( 0, 0, 1.0 );
  A.add( 2, 1, -1.0 );
  A.add( 1, 2, 4.0 );
  EXPECT_THROW( A.add( 3, 0, 1.0 ), DomainError );
  A.finalize();
  EXPECT_EQ( A( 0, 0 ), 3.0 );
  EXPECT_EQ( A( 1, 1 ), 0.0 );
  EXPECT_EQ( A.nonZeros(), 3u );
  EXPECT_EQ( A.mv( std::vector< double >{ 1.0, 2.0, 3.0 } ), ( std::vector< double >{ 3.0, 12.0, -2.0 } ) );
  EXPECT_EQ( A.asymmetry(), 5.0 );
  EXPECT_THROW( A.add( 0, 0, 1.0 ), StateError );
}

TEST( CG, SmallSystems )
{
  const CGResult id = cgSolve( diagonal( { 1.0, 1.0, 1.0 } ), std::vector< double >{ 1.0, -2.0, 3.0 }, 1e-12, 10 );
  EXPECT_LE( id.iterations, 1 );
  EXPECT_EQ( id.x, ( std::vector< double >{ 1.0, -2.0, 3.0 } ) );

  const CGResult d = cgSolve( diagonal( { 1.0, 4.0 } ), std::vector< double >{ 1.0, 4.0 }, 1e-12, 10 );
  EXPECT_NEAR( d.x[ 0 ], 1.0, 1e-14 );
  EXPECT_NEAR( d.x[ 1 ], 1.0, 1e-14 );

  const CGResult zero = cgSolve( diagonal( { 2.0, 3.0 } ), std::vector< double >{ 0.0, 0.0 }, 1e-12, 10 );
  EXPECT_EQ( zero.iterations, 0 );

  // distinct eigenvalues need as many iterations as unknowns
  try
  {
    cgSolve( diagonal( { 1.0, 2.0, 3.0, 4.0 } ), std::vector< double >{ 1.0, 1.0, 1.0, 1.0 }, 1e-12, 2 );
    FAIL() << "expected ConvergenceError";
  }
  catch( const ConvergenceError &e )
  {
    EXPECT_GT( e.residual(), 1e-6 );
    EXPECT_EQ( e.iterations(), 2 );
  }
  EXPECT_THROW( cgSolve( diagonal( { 1.0, -1.0 } ), std::vector< double >{ 1.0, 1.0 }, 1e-12, 10 ), NumericError );
  EXPECT_THROW( cgSolve( diagonal( { 1.0, 1.0 } ), std::vector< double >{ 1.0 }, 1e-12, 10 ), ShapeError );
}

TEST( P2, BasisIsNodal )
{
  const auto nodes = P2Basis::nodes();
  for( int j = 0; j < 6; ++j )
  {
    const auto phi = P2Basis::values( nodes[ j ] );
    for( int i = 0; i < 6; ++i )
      EXPECT_NEAR( phi[ i ], i == j ? 1.0 : 0.0, 1e-15 );
  }
}

TEST( P2, ElementStiffnessMatchesOracle )
{
  const std::vector< std::vector< FieldVector > > triangles{
    { FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 0.0 }, FieldVector{ 0.0, 1.0 } },
    { FieldVector{ 0.3, -0.2 }, FieldVector{ 1.7, 0.4 }, FieldVector{ 0.1, 2.0 } },
    { FieldVector{ 1.0, 1.0 }, FieldVector{ 1.0, 0.0 }, FieldVector{ 0.0, 0.0 } } };
  for( const auto &c : triangles )
  {
    const AffineGeometry g( triangle, c );
    const Array2 A = p2ElementStiffness( g );
    const auto ref = oracle::p2Stiffness( corners( g ) );
    for( int i = 0; i < 6; ++i )
      for( int j = 0; j < 6; ++j )
        EXPECT_NEAR( A( i, j ), ref[ i ][ j ], 1e-12 ) << i << " " << j;
  }
}

TEST( P2, ElementStiffnessRigidMotionInvariance )
{
  const std::vector< FieldVector > c{ FieldVector{ 0.3, -0.2 }, FieldVector{ 1.7, 0.4 }, FieldVector{ 0.1, 2.0 } };
  const Array2 A = p2ElementStiffness( AffineGeometry( triangle, c ) );
  for( double angle : { 0.3, 1.0, std::numbers::pi, 4.0 } )
  {
    std::vector< FieldVector > moved;
    for( const auto &x : c )
      moved.push_back( FieldVector{ std::cos( angle ) * x[ 0 ] - std::sin( angle ) * x[ 1 ] + 5.0,
                                    std::sin( angle ) * x[ 0 ] + std::cos( angle ) * x[ 1 ] - 2.0 } );
    const Array2 B = p2ElementStiffness( AffineGeometry( triangle, moved ) );
    for( int i = 0; i < 6; ++i )
      for( int j = 0; j < 6; ++j )
        EXPECT_NEAR( A( i, j ), B( i, j ), 1e-12 );
  }
}

TEST( P2, GlobalMatrix )
{
  GridView view = simplexGrid( cartesianTriangulation( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, 3, 2 ) );
  view.hierarchicalGrid().globalRefine( 1 );
  const P2System sys = femAssembleP2( view, constant( view, 1.0 ) );
  const int n = sys.matrix.rows();
  EXPECT_EQ( n, view.size( 2 ) + view.size( 1 ) );
  EXPECT_LE( sys.matrix.asymmetry(), 1e-12 );

  // dense assembly from the oracle element matrices
  std::vector< std::vector< double > > dense( n, std::vector< double >( n, 0.0 ) );
  for( const Entity &e : view.elements() )
  {
    const auto dofs = sys.mapper.all( e );
    ASSERT_EQ( dofs.size(), 6u );
    const auto ref = oracle::p2Stiffness( corners( e.geometry() ) );
    for( int i = 0; i < 6; ++i )
      for( int j = 0; j < 6; ++j )
        dense[ dofs[ i ] ][ dofs[ j ] ] += ref[ i ][ j ];
  }
  for( int i = 0; i < n; ++i )
  {
    double rowSum = 0.0;
    for( int j = 0; j < n; ++j )
    {
      EXPECT_NEAR( sys.matrix( i, j ), dense[ i ][ j ], 1e-11 );
      rowSum += sys.matrix( i, j );
    }
    EXPECT_NEAR( rowSum, 0.0, 1e-10 );
  }

  // load vector of f = 1 integrates the basis: sum equals the area
  double total = 0.0;
  for( double l : sys.rhs )
    total += l;
  EXPECT_NEAR( total, 1.0, 1e-13 );
}

TEST( P2, DirichletOnSingleElement )
{
  const GridView view = singleTriangle( FieldVector{ 0.0, 0.0 }, FieldVector{ 2.0, 0.0 }, FieldVector{ 0.5, 1.0 } );
  P2System sys = femAssembleP2( view, constant( view, 3.0 ) );
  const auto flags = p2BoundaryDofs( view, sys.mapper );
  EXPECT_EQ( std::count( flags.begin(), flags.end(), true ), 6 );
  applyDirichlet( view, sys, gridFunctionFromGlobal( view, [] ( const FieldVector &x ) { return x[ 0 ] + 2.0 * x[ 1 ]; }, 1 ) );
  for( int i = 0; i < 6; ++i )
    for( int j = 0; j < 6; ++j )
      EXPECT_EQ( sys.matrix( i, j ), i == j ? 1.0 : 0.0 );
  const Entity e = view.elements()[ 0 ];
  const auto dofs = sys.mapper.all( e );
  const auto nodes = P2Basis::nodes();
  for( int i = 0; i < 6; ++i )
  {
    const FieldVector x = e.geometry().toGlobal( nodes[ i ] );
    EXPECT_NEAR( sys.rhs[ dofs[ i ] ], x[ 0 ] + 2.0 * x[ 1 ], 1e-15 );
  }
}

TEST( P2, HomogeneousBoundaryStaysZero )
{
  GridView view = simplexGrid( cartesianTriangulation( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, 4, 4 ) );
  view.hierarchicalGrid().globalRefine( 1 );
  P2System sys = femAssembleP2( view, constant( view, 1.0 ) );
  applyDirichlet( view, sys, constant( view, 0.0 ) );
  EXPECT_LE( sys.matrix.asymmetry(), 1e-12 );
  const CGResult cg = cgSolve( sys.matrix, sys.rhs, 1e-10, 1000 );
  const auto flags = p2BoundaryDofs( view, sys.mapper );
  int boundary = 0;
  for( std::size_t i = 0; i < flags.size(); ++i )
    if( flags[ i ] )
    {
      EXPECT_EQ( cg.x[ i ], 0.0 );
      ++boundary;
    }
  // 16 boundary edges of the refined 4x4 triangulation: 8 per side, each with one vertex and one edge dof
  EXPECT_EQ( boundary, 4 * 8 * 2 );
  EXPECT_THROW( femAssembleP2( structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 2, 2 } ),
                               constant( view, 1.0 ) ), CapabilityError );
}

TEST( P2, ReproducesQuadraticSolution )
{
  // u = x0^2 + x1^2 solves -Laplace u = -4 and lies in the P2 space
  GridView view = simplexGrid( cartesianTriangulation( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, 3, 3 ) );
  auto u = [] ( const FieldVector &x ) { return x[ 0 ] * x[ 0 ] + x[ 1 ] * x[ 1 ]; };
  P2System sys = femAssembleP2( view, constant( view, -4.0 ) );
  applyDirichlet( view, sys, gridFunctionFromGlobal( view, u, 1 ) );
  const CGResult cg = cgSolve( sys.matrix, sys.rhs, 1e-13, 1000 );
  const GridFunction uh = p2Function( sys.mapper, cg.x );
  for( const Entity &e : view.elements() )
    EXPECT_NEAR( uh( e, FieldVector{ 0.2, 0.3 } )[ 0 ], u( e.geometry().toGlobal( FieldVector{ 0.2, 0.3 } ) ), 1e-11 );
}

TEST( P2, ConvergenceRate )
{
  const auto steps = poissonConvergence( 3 );
  ASSERT_EQ( steps.size(), 4u );
  for( std::size_t k = 1; k < steps.size(); ++k )
  {
    EXPECT_GE( steps[ k ].rate, 2.7 );
    EXPECT_LE( steps[ k ].rate, 3.2 );
    EXPECT_LT( steps[ k ].l2error, steps[ k-1 ].l2error );
  }
  for( const auto &s : steps )
    EXPECT_LE( s.iterations, 10 * std::sqrt( double( s.dofs ) ) );
  EXPECT_EQ( steps[ 0 ].dofs, 81 );
}

TEST( L2Norm, ExactValues )
{
  const GridView square = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 3, 5 } );
  const GridView triangles = simplexGrid( cartesianTriangulation( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, 3, 2 ) );
  for( const GridView &view : { square, triangles } )
    for( EvaluationMode mode : { EvaluationMode::loop, EvaluationMode::batch } )
    {
      EXPECT_NEAR( l2Norm2( view, constant( view, 1.0 ), QuadratureRules( 0 ), mode ), 1.0, 1e-13 );
      const GridFunction x0 = gridFunctionFromGlobal( view, [] ( const FieldVector &x ) { return x[ 0 ]; }, 1 );
      EXPECT_NEAR( l2Norm2( view, x0, QuadratureRules( 2 ), mode ), 1.0 / 3.0, 1e-13 );
    }
}

TEST( L2Norm, ModesAgreeOnInterpolationError )
{
  const LagrangeInterpolationError problem( 2 );
  for( int order : { 2, 5 } )
  {
    const double loop = problem.l2Error( order, EvaluationMode::loop );
    const double batch = problem.l2Error( order, EvaluationMode::batch );
    const double kernel = problem.l2ErrorKernel( order );
    EXPECT_NEAR( loop, batch, 1e-12 );
    EXPECT_NEAR( loop, kernel, 1e-12 );
  }

  // independent evaluation with a Duffy-collapsed Gauss product rule; the gap is the
  // quadrature error of the degree 5 rule and shrinks under refinement
  double previous = 1.0;
  for( int refine : { 2, 4 } )
  {
    const LagrangeInterpolationError p( refine );
    const GridFunction &err = p.error();
    double sum = 0.0;
    for( const Entity &e : p.gridView().elements() )
      sum += 2.0 * e.geometry().volume() * oracle::integrateTriangle( [ & ] ( double a, double b ) {
        const double v = err( e, FieldVector{ a, b } )[ 0 ];
        return v * v;
      }, 12 );
    const double gap = std::abs( std::sqrt( sum ) - p.l2Error( 5, EvaluationMode::batch ) ) / std::sqrt( sum );
    EXPECT_LT( gap, previous / 100 );
    previous = gap;
  }
  EXPECT_LE( previous, 1e-5 );
}

TEST( FV, Initialization )
{
  const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 16, 16 } );
  const MCMGMapper m = elementMapper( view );
  const FVState state = fvInitialize( view, m, gridFunctionFromGlobal( view, annulus, 1 ) );
  EXPECT_EQ( static_cast< int >( state.data.size() ), view.size( 0 ) );
  for( const Entity &e : view.elements() )
  {
    const double r = e.geometry().center().two_norm();
    EXPECT_EQ( state.data[ m.index( e ) ], ( r > 0.125 && r < 0.5 ) ? 1.0 : 0.0 );
  }
  EXPECT_THROW( fvInitialize( view, mapper( view, std::vector< int >{ 1, 0, 1 } ), constant( view, 1.0 ) ), DomainError );
}

TEST( FV, ConstantStateIsPreserved )
{
  GridView fan = conformGrid( fanGridData() );
  fan.hierarchicalGrid().globalRefine( 2 );
  for( const GridView &view : { structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 8, 8 } ), fan } )
  {
    FVState state = fvInitialize( view, elementMapper( view ), constant( view, 2.5 ) );
    for( int step = 0; step < 10; ++step )
      fvStep( state, view, [] ( double, const FieldVector & ) { return 2.5; } );
    for( double u : state.data )
      EXPECT_EQ( u, 2.5 );
  }
}

TEST( FV, ConservationAndMaximumPrinciple )
{
  GridView fan = conformGrid( fanGridData() );
  refineTowardsOrigin( fan.hierarchicalGrid() );
  for( const GridView &view : { structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 32, 32 } ), fan } )
  {
    FVState state = fvInitialize( view, elementMapper( view ), gridFunctionFromGlobal( view, annulus, 1 ) );
    int steps = 0;
    while( state.t < 0.5 )
    {
      const double before = fvMass( view, state );
      const auto [ lo, hi ] = std::minmax_element( state.data.begin(), state.data.end() );
      const double low = *lo, high = *hi;
      FVStepReport report;
      fvStep( state, view, translatedAnnulus, 0.45, &report );
      ++steps;
      EXPECT_NEAR( fvMass( view, state ) - before, -report.boundaryFlux, 1e-12 );
      for( double u : state.data )
      {
        EXPECT_GE( u, std::min( low, report.boundaryMin ) - 1e-14 );
        EXPECT_LE( u, std::max( high, report.boundaryMax ) + 1e-14 );
      }
    }
    EXPECT_GT( steps, 1 );
  }
}

TEST( FV, RunStepCount )
{
  const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 10, 10 } );
  const double tau = fvTimeStep( view, 0.45 );
  // unit square cells of width h: outflow through two facets of length h
  EXPECT_NEAR( tau, 0.45 * 0.1 * 0.1 / ( 2 * 0.1 ), 1e-15 );
  int calls = 0;
  const FVState one = fvRun( view, gridFunctionFromGlobal( view, annulus, 1 ), translatedAnnulus, 0.5 * tau, 0.45,
                             [ & ] ( int, const FVState &, const FVStepReport & ) { ++calls; } );
  EXPECT_EQ( calls, 1 );
  EXPECT_DOUBLE_EQ( one.t, tau );
  calls = 0;
  fvRun( view, gridFunctionFromGlobal( view, annulus, 1 ), translatedAnnulus, 0.1, 0.45,
         [ & ] ( int, const FVState &, const FVStepReport & ) { ++calls; } );
  EXPECT_EQ( calls, static_cast< int >( std::ceil( 0.1 / tau - 1e-9 ) ) );
  EXPECT_THROW( fvRun( view, constant( view, 1.0 ), translatedAnnulus, 0.0 ), DomainError );
  FVState s = fvInitialize( view, elementMapper( view ), constant( view, 1.0 ) );
  EXPECT_THROW( fvStep( s, view, translatedAnnulus, 0.0 ), DomainError );
}

TEST( FV, L1ErrorDecreasesUnderRefinement )
{
  const double tEnd = 0.25;
  std::vector< double > errors;
  for( int n : { 16, 32, 64 } )
  {
    const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { n, n } );
    const FVState state = fvRun( view, gridFunctionFromGlobal( view, annulus, 1 ), translatedAnnulus, tEnd );
    // exact solution at the final time, sampled on an 8x8 midpoint lattice per cell
    double err = 0.0;
    for( const Entity &e : view.elements() )
    {
      const auto geo = e.geometry();
      const double u = state.data[ state.mapper.index( e ) ];
      double cell = 0.0;
      for( int i = 0; i < 8; ++i )
        for( int j = 0; j < 8; ++j )
          cell += std::abs( u - translatedAnnulus( state.t, geo.toGlobal( FieldVector{ ( i + 0.5 ) / 8, ( j + 0.5 ) / 8 } ) ) );
      err += cell / 64 * geo.volume();
    }
    errors.push_back( err );
  }
  EXPECT_LT( errors[ 1 ], errors[ 0 ] );
  EXPECT_LT( errors[ 2 ], errors[ 1 ] );
}
