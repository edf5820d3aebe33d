// Acceptance suite: one PASS/FAIL line per criterion A1..A11, exit code 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <gridkit/function/gridfunction.hh>
#include <gridkit/geometry/quadrature.hh>
#include <gridkit/geometry/referenceelement.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/grid/structured.hh>
#include <gridkit/io/triangulation.hh>
#include <gridkit/io/vtk.hh>
#include <gridkit/parallel/communicate.hh>
#include <gridkit/parallel/minrank.hh>
#include <gridkit/registry/registry.hh>
#include <gridkit/registry/typename.hh>
#include <gridkit/schemes/finitevolume.hh>
#include <gridkit/schemes/l2norm.hh>
#include <gridkit/schemes/lagrangeerror.hh>
#include <gridkit/schemes/p2fem.hh>

#include "oracles.hh"

using namespace gridkit;

namespace
{

  // pinned tolerances
  constexpr double ruleTol = 1e-12;
  constexpr double exactnessTol = 1e-12;
  constexpr double modeTol = 1e-12;
  constexpr double softRelTol = 0.25;
  constexpr double p1SlopeMin = 1.8, p1SlopeMax = 2.2;
  constexpr double stiffnessTol = 1e-12;
  constexpr double symmetryTol = 1e-12;
  constexpr double rowSumTol = 1e-10;
  constexpr double femRateMin = 2.7, femRateMax = 3.2;
  constexpr double cgTol = 1e-10;
  constexpr double massTol = 1e-12;
  constexpr double areaTol = 1e-8;

  // reference values
  constexpr double printedMaxBarycenterError = 1.6026566867981322;
  constexpr double printedL2Error = 0.01933669460592608;

  struct Outcome
  {
    bool pass = true;
    std::ostringstream detail;

    void require ( bool ok, const std::string &what )
    {
      if( !ok )
      {
        pass = false;
        detail << " [failed: " << what << "]";
      }
    }
  };

  double seconds ( std::chrono::steady_clock::time_point start )
  {
    return std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
  }

  std::string fmt ( double v, int digits = 17 )
  {
    std::ostringstream s;
    s.precision( digits );
    s << v;
    return s.str();
  }

  GridView unitSquare ()
  {
    SimplexGridData data;
    data.vertices = { FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 0.0 }, FieldVector{ 1.0, 1.0 }, FieldVector{ 0.0, 1.0 } };
    data.simplices = { { 2, 0, 1 }, { 0, 2, 3 } };
    return simplexGrid( data );
  }

  void a1 ( Outcome &o )
  {
    const auto start = std::chrono::steady_clock::now();
    const QuadratureRule rule = quadratureRule( triangle, 3 );
    const std::vector< std::pair< FieldVector, double > > printed{
      { FieldVector{ 1.0 / 3.0, 1.0 / 3.0 }, -0.28125 },
      { FieldVector{ 0.6, 0.2 }, 0.2604166666666667 },
      { FieldVector{ 0.2, 0.6 }, 0.2604166666666667 },
      { FieldVector{ 0.2, 0.2 }, 0.2604166666666667 } };
    o.require( rule.size() == printed.size(), "4 points" );
    double dev = 0.0;
    for( std::size_t i = 0; i < std::min( rule.size(), printed.size() ); ++i )
    {
      dev = std::max( dev, ( rule[ i ].position - printed[ i ].first ).two_norm() );
      dev = std::max( dev, std::abs( rule[ i ].weight - printed[ i ].second ) );
    }
    const double t = seconds( start );
    o.require( dev <= ruleTol, "points and weights" );
    o.require( t < 1.0, "runtime < 1 s" );
    o.detail << "max deviation " << fmt( dev, 3 ) << " (tol " << ruleTol << "), " << fmt( t, 3 ) << " s";
  }

  void a2 ( Outcome &o )
  {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    int rules = 0;
    for( GeometryType type : { line, triangle, quadrilateral, hexahedron } )
      for( int order = 0; order <= maxQuadratureOrder( type ); ++order )
      {
        worst = std::max( worst, oracle::quadratureExactnessError( type, order ) );
        ++rules;
      }
    const double t = seconds( start );
    o.require( worst <= exactnessTol, "monomial exactness" );
    o.require( t < 5.0, "runtime < 5 s" );
    o.detail << rules << " rules, max error " << fmt( worst, 3 ) << " (tol " << exactnessTol << "), " << fmt( t, 3 ) << " s";
  }

  void a3 ( Outcome &o )
  {
    const GridView view = unitSquare();
    o.require( view.size( 0 ) == 2 && view.size( 2 ) == 4, "2 elements and 4 vertices" );
    o.require( view.size( 1 ) == 5, "5 edges" );

    std::ostringstream listing;
    for( int codim = 0; codim <= view.dimension(); ++codim )
      for( const Entity &entity : view.entities( codim ) )
      {
        const auto geometry = entity.geometry();
        for( std::size_t i = 0; i < geometry.corners().size(); ++i )
          listing << ( i ? ", " : "" ) << geometry.corner( i );
        listing << '\n';
      }
    o.require( listing.str() ==
               "(1.000000, 1.000000), (1.000000, 0.000000), (0.000000, 0.000000)\n"
               "(0.000000, 0.000000), (0.000000, 1.000000), (1.000000, 1.000000)\n"
               "(0.000000, 0.000000), (1.000000, 0.000000)\n"
               "(0.000000, 0.000000), (1.000000, 1.000000)\n"
               "(0.000000, 0.000000), (0.000000, 1.000000)\n"
               "(1.000000, 0.000000), (1.000000, 1.000000)\n"
               "(1.000000, 1.000000), (0.000000, 1.000000)\n"
               "(0.000000, 0.000000)\n"
               "(1.000000, 0.000000)\n"
               "(1.000000, 1.000000)\n"
               "(0.000000, 1.000000)\n", "entity corner listing" );

    std::ostringstream corners;
    const ReferenceElement &ref = referenceElement( triangle );
    for( int i = 0; i < ref.size( 2 ); ++i )
      corners << ( i ? "\t" : "" ) << ref.corner( i );
    o.require( corners.str() == "(0.000000, 0.000000)\t(1.000000, 0.000000)\t(0.000000, 1.000000)", "reference corners" );
    o.detail << view.size( 0 ) << " elements, " << view.size( 1 ) << " edges, " << view.size( 2 ) << " vertices; corners " << corners.str();
  }

  void a4 ( Outcome &o )
  {
    GridView cart = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 0.25 }, { 15, 4 } );
    const int e0 = cart.size( 0 ), v0 = cart.size( 2 );
    cart.hierarchicalGrid().globalRefine( 1 );
    o.require( e0 == 60 && v0 == 80, "15x4 counts 60/80" );
    o.require( cart.size( 0 ) == 240, "240 cells after refine" );

    GridView bisection = conformGrid( fanGridData() );
    GridView quartering = simplexGrid( fanGridData() );
    bool doubles = true, quadruples = true;
    for( int k = 0; k < 4; ++k )
    {
      const int nb = bisection.size( 0 ), nq = quartering.size( 0 );
      bisection.hierarchicalGrid().globalRefine( 1 );
      quartering.hierarchicalGrid().globalRefine( 1 );
      doubles = doubles && bisection.size( 0 ) == 2 * nb;
      quadruples = quadruples && quartering.size( 0 ) == 4 * nq;
    }
    o.require( doubles, "bisection doubles" );
    o.require( quadruples, "quartering quadruples" );

    GridView fan = conformGrid( fanGridData() );
    HierarchicalGrid &grid = fan.hierarchicalGrid();
    grid.globalRefine( 2 );
    bool conforming = oracle::conforming( oracle::edgeUse( fan, oracle::fanBoundary() ) );
    std::vector< int > counts{ fan.size( 0 ) };
    for( int i = 1; i <= 4; ++i )
    {
      const double radius = std::pow( 0.64, i );
      grid.adapt( [ radius ] ( const Entity &e ) {
        return e.geometry().center().two_norm() < radius ? Marker::refine : Marker::keep;
      } );
      conforming = conforming && oracle::conforming( oracle::edgeUse( fan, oracle::fanBoundary() ) );
      counts.push_back( fan.size( 0 ) );
    }
    o.require( conforming, "conformity after every adaptation round" );
    o.detail << "15x4: " << e0 << "/" << v0 << " -> " << cart.size( 0 ) << " cells; adaptation sequence";
    for( int c : counts )
      o.detail << " " << c;
    o.detail << ", conforming";
  }

  void a5 ( Outcome &o )
  {
    const LagrangeInterpolationError problem( 4 );
    const GridFunction &err = problem.error();
    const QuadratureRules rules( 5 );
    const long elements = problem.gridView().size( 0 );
    const long points = static_cast< long >( rules( triangle ).size() );

    err.resetCallbacks();
    const double loop = std::sqrt( l2Norm2( problem.gridView(), err, rules, EvaluationMode::loop ) );
    const long loopCalls = err.callbacks();
    err.resetCallbacks();
    const double batch = std::sqrt( l2Norm2( problem.gridView(), err, rules, EvaluationMode::batch ) );
    const long batchCalls = err.callbacks();

    o.require( std::abs( loop - batch ) <= modeTol, "loop and batch agree" );
    o.require( batchCalls == elements, "batch callbacks = #elements" );
    o.require( loopCalls == elements * points, "loop callbacks = #elements * #points" );
    o.detail << "loop " << fmt( loop ) << " batch " << fmt( batch ) << " |diff| " << fmt( std::abs( loop - batch ), 3 )
             << " (tol " << modeTol << "); callbacks batch " << batchCalls << " = " << elements << ", loop " << loopCalls
             << " = " << elements << "*" << points;
  }

  void a6 ( Outcome &o )
  {
    const double maxErr = LagrangeInterpolationError( 0 ).maxBarycenterError();
    const double l2 = LagrangeInterpolationError( 4 ).l2Error( 5, EvaluationMode::batch );
    const double relMax = std::abs( maxErr - printedMaxBarycenterError ) / printedMaxBarycenterError;
    const double relL2 = std::abs( l2 - printedL2Error ) / printedL2Error;
    o.require( relMax <= softRelTol, "max barycenter error within 25%" );
    o.require( relL2 <= softRelTol, "L2 error within 25%" );

    std::vector< double > errors;
    for( int refine = 3; refine <= 6; ++refine )
      errors.push_back( LagrangeInterpolationError( refine ).l2ErrorKernel( 5 ) );
    std::vector< double > slopes;
    for( std::size_t k = 1; k < errors.size(); ++k )
      slopes.push_back( std::log2( errors[ k-1 ] / errors[ k ] ) );
    const bool slopesOk = std::all_of( slopes.begin(), slopes.end(), [] ( double s ) { return s >= p1SlopeMin && s <= p1SlopeMax; } );
    o.require( slopesOk, "P1 slopes in [1.8, 2.2]" );
    o.detail << "max barycenter error " << fmt( maxErr ) << " (rel " << fmt( relMax, 2 ) << "), L2 " << fmt( l2 ) << " (rel "
             << fmt( relL2, 2 ) << "), soft tol " << softRelTol << "; P1 slopes";
    for( double s : slopes )
      o.detail << " " << fmt( s, 4 );
    o.detail << " in [" << p1SlopeMin << ", " << p1SlopeMax << "]";
  }

  void a7 ( Outcome &o )
  {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng( 5 );
    std::uniform_real_distribution< double > u( -2.0, 2.0 );
    double stiffDev = 0.0;
    for( int trial = 0; trial < 20; ++trial )
    {
      std::vector< FieldVector > c{ FieldVector{ u( rng ), u( rng ) }, FieldVector{ u( rng ), u( rng ) }, FieldVector{ u( rng ), u( rng ) } };
      const double det = ( c[ 1 ][ 0 ] - c[ 0 ][ 0 ] ) * ( c[ 2 ][ 1 ] - c[ 0 ][ 1 ] ) - ( c[ 2 ][ 0 ] - c[ 0 ][ 0 ] ) * ( c[ 1 ][ 1 ] - c[ 0 ][ 1 ] );
      if( std::abs( det ) < 0.5 )
      {
        --trial;
        continue;
      }
      const Array2 A = p2ElementStiffness( AffineGeometry( triangle, c ) );
      const auto ref = oracle::p2Stiffness( { { { c[ 0 ][ 0 ], c[ 0 ][ 1 ] }, { c[ 1 ][ 0 ], c[ 1 ][ 1 ] }, { c[ 2 ][ 0 ], c[ 2 ][ 1 ] } } } );
      for( int i = 0; i < 6; ++i )
        for( int j = 0; j < 6; ++j )
          stiffDev = std::max( stiffDev, std::abs( A( i, j ) - ref[ i ][ j ] ) );
    }
    o.require( stiffDev <= stiffnessTol, "element stiffness vs oracle" );

    GridView view = simplexGrid( cartesianTriangulation( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, 4, 4 ) );
    view.hierarchicalGrid().globalRefine( 2 );
    const P2System sys = femAssembleP2( view, gridFunctionFromGlobal( view, [] ( const FieldVector & ) { return 1.0; }, 1 ) );
    const double asym = sys.matrix.asymmetry();
    double rowSum = 0.0;
    const auto &rowPtr = sys.matrix.rowPointers();
    const auto &values = sys.matrix.values();
    for( int i = 0; i < sys.matrix.rows(); ++i )
      rowSum = std::max( rowSum, std::abs( std::accumulate( values.begin() + rowPtr[ i ], values.begin() + rowPtr[ i + 1 ], 0.0 ) ) );
    o.require( asym <= symmetryTol, "symmetry" );
    o.require( rowSum <= rowSumTol, "zero row sums" );

    const auto steps = poissonConvergence( 4, cgTol );
    bool ratesOk = true;
    for( std::size_t k = 1; k < steps.size(); ++k )
      ratesOk = ratesOk && steps[ k ].rate >= femRateMin && steps[ k ].rate <= femRateMax;
    o.require( ratesOk, "Poisson rates in [2.7, 3.2]" );
    const double t = seconds( start );
    o.require( t < 60.0, "runtime < 60 s" );
    o.detail << "stiffness dev " << fmt( stiffDev, 3 ) << " (tol " << stiffnessTol << "), asymmetry " << fmt( asym, 3 )
             << ", max row sum " << fmt( rowSum, 3 ) << "; rates";
    for( std::size_t k = 1; k < steps.size(); ++k )
      o.detail << " " << fmt( steps[ k ].rate, 4 );
    o.detail << " in [" << femRateMin << ", " << femRateMax << "], " << fmt( t, 3 ) << " s";
  }

  void a8 ( Outcome &o )
  {
    const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 64, 64 } );

    FVState constant = fvInitialize( view, elementMapper( view ), gridFunctionFromGlobal( view, [] ( const FieldVector & ) { return 1.0; }, 1 ) );
    bool exact = true;
    for( int step = 0; step < 20; ++step )
      fvStep( constant, view, [] ( double, const FieldVector & ) { return 1.0; } );
    for( double v : constant.data )
      exact = exact && v == 1.0;
    o.require( exact, "constant state preserved exactly" );

    FVState state = fvInitialize( view, elementMapper( view ), gridFunctionFromGlobal( view, annulus, 1 ) );
    double worstMass = 0.0, worstViolation = 0.0;
    int steps = 0;
    while( state.t < 0.5 )
    {
      const double before = fvMass( view, state );
      const auto [ lo, hi ] = std::minmax_element( state.data.begin(), state.data.end() );
      const double low = std::min( *lo, 0.0 ), high = std::max( *hi, 0.0 );
      FVStepReport report;
      fvStep( state, view, translatedAnnulus, 0.45, &report );
      ++steps;
      worstMass = std::max( worstMass, std::abs( fvMass( view, state ) - before + report.boundaryFlux ) );
      const double bLow = std::min( low, report.boundaryMin ), bHigh = std::max( high, report.boundaryMax );
      for( double v : state.data )
        worstViolation = std::max( { worstViolation, bLow - v, v - bHigh } );
    }
    o.require( worstMass <= massTol, "mass balance" );
    o.require( worstViolation <= 0.0, "maximum principle" );
    o.detail << steps << " steps to t=" << fmt( state.t, 6 ) << ", max mass defect " << fmt( worstMass, 3 ) << " (tol " << massTol
             << "), max principle violation " << fmt( std::max( worstViolation, 0.0 ), 3 );
  }

  void a9 ( Outcome &o )
  {
    const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { 20, 20 } );
    const MinRankDemo demo( view, 5 );
    const auto expected = oracle::minOwnerByCoordinates( view, demo.partition.elementRank, 5 );
    const IndexSet indexSet = view.indexSet();
    int wrong = 0, copies = 0;
    for( const auto &rank : demo.ranks )
      for( const Entity &v : rank.allPartition().vertices() )
      {
        ++copies;
        wrong += demo.values[ rank.rank() ][ demo.mapper.index( v ) ] != expected[ indexSet.index( v ) ] ? 1 : 0;
      }
    o.require( wrong == 0, "min rank on every vertex copy" );

    const auto &ranks = demo.ranks;
    const MCMGMapper m = mapper( view, std::vector< int >{ 1, 1, 1 } );
    std::mt19937 rng( 9 );
    std::uniform_int_distribution< int > value( -100, 100 );
    DistributedArray data( 5, std::vector< double >( m.size() ) );
    for( auto &d : data )
      for( double &x : d )
        x = value( rng );
    bool invariant = true;
    std::vector< int > order{ 0, 1, 2, 3, 4 };
    for( const CommOp &op : { CommOp::add(), CommOp::min(), CommOp::max() } )
    {
      DistributedArray reference = data;
      communicate( ranks, m, PartitionKind::interiorBorder, PartitionKind::all, op, {}, { &reference } );
      for( int trial = 0; trial < 5; ++trial )
      {
        std::shuffle( order.begin(), order.end(), rng );
        DistributedArray permuted = data;
        communicate( ranks, m, PartitionKind::interiorBorder, PartitionKind::all, op, order, { &permuted } );
        invariant = invariant && permuted == reference;
      }
    }
    o.require( invariant, "add/min/max invariant under sender permutation" );

    int rejected = 0, illegal = 0;
    const std::vector< PartitionKind > kinds{ PartitionKind::interior, PartitionKind::interiorBorder, PartitionKind::overlap,
                                              PartitionKind::overlapFront, PartitionKind::all };
    auto overlapLike = [] ( PartitionKind k ) { return k == PartitionKind::overlap || k == PartitionKind::overlapFront; };
    for( PartitionKind from : kinds )
      for( PartitionKind to : kinds )
      {
        const bool bad = from == PartitionKind::interior || to == PartitionKind::interior
                         || ( from == PartitionKind::interiorBorder && overlapLike( to ) )
                         || ( to == PartitionKind::interiorBorder && overlapLike( from ) );
        if( !bad )
          continue;
        ++illegal;
        try
        {
          communicate( ranks, m, from, to, CommOp::add(), data );
        }
        catch( const IllegalPartitionError & )
        {
          ++rejected;
        }
      }
    o.require( rejected == illegal, "illegal partition pairs rejected" );
    o.detail << "5 ranks, " << demo.sharedVertices() << " shared vertices, " << wrong << "/" << copies << " wrong copies; permutation invariant "
             << ( invariant ? "yes" : "no" ) << "; " << rejected << "/" << illegal << " illegal pairs rejected";
  }

  void a10 ( Outcome &o )
  {
    const TypeDescriptor a = generateTypeName( "MyModule::FooImplA", { 2LL } );
    const TypeDescriptor c = generateTypeName( "MyModule::FooImplC", { a } );
    o.require( a.typeName == "MyModule::FooImplA< 2 >", "FooImplA name" );
    o.require( c.typeName == "MyModule::FooImplC< MyModule::FooImplA< 2 > >", "FooImplC name" );

    Registry< int > registry;
    const auto first = registry.insertClass( a, [] ( const nlohmann::json & ) { return 1; } );
    const auto second = registry.insertClass( a, [] ( const nlohmann::json & ) { return 2; } );
    o.require( first.second && !second.second && first.first == second.first, "duplicate insertClass" );

    const std::string key = moduleKey( TypeDescriptor{ "MyModule::Foo", {} } );
    o.require( std::regex_match( key, std::regex( "[A-Za-z_][A-Za-z0-9_]*_[0-9a-f]{32}" ) ), "module key format" );
    o.detail << "\"" << a.typeName << "\", \"" << c.typeName << "\", duplicate isNew=" << ( second.second ? "true" : "false" )
             << ", key " << key;
  }

  void a11 ( Outcome &o )
  {
    const auto dir = std::filesystem::temp_directory_path() / "gridkit-acceptance";
    std::filesystem::create_directories( dir );
    GridView fan = conformGrid( fanGridData() );
    refineTowardsOrigin( fan.hierarchicalGrid() );
    const GridView quads = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 2.0, 0.5 }, { 6, 3 } );
    double worst = 0.0;
    bool wellFormed = true, counts = true;
    int files = 0;
    for( const auto &[ view, area ] : { std::pair< GridView, double >{ fan, 1.8 }, std::pair< GridView, double >{ quads, 1.0 } } )
      for( int level = 0; level <= 2; ++level )
      {
        const GridFunction f = gridFunctionFromGlobal( view, oscillatingFunction, 1 );
        const std::string path = writeVTK( view, ( dir / ( "a11-" + std::to_string( files++ ) ) ).string(), { { "f", f } }, { { "fc", f } }, level );
        const oracle::VtuFile file = oracle::readVtu( path );
        wellFormed = wellFormed && file.wellFormed;
        const Triangulation t = triangulation( view, level );
        const long cells = static_cast< long >( view.size( 0 ) ) << ( 2 * level );
        const auto *pd = file.find( "PointData", "f" );
        const auto *cd = file.find( "CellData", "fc" );
        counts = counts && file.numberOfCells == cells && file.numberOfPoints == static_cast< long >( t.points.rows() )
                 && pd && static_cast< long >( pd->values.size() ) == file.numberOfPoints
                 && cd && static_cast< long >( cd->values.size() ) == file.numberOfCells;
        double triArea = 0.0;
        for( const auto &tri : t.triangles )
          triArea += oracle::triangleArea( t.points.data(), 2, tri[ 0 ], tri[ 1 ], tri[ 2 ] );
        worst = std::max( { worst, std::abs( triArea - area ), std::abs( oracle::vtuCellArea( file ) - area ) } );
      }
    o.require( wellFormed, "well-formed vtu" );
    o.require( counts, "consistent counts" );
    o.require( worst <= areaTol, "areas sum to domain area" );
    o.detail << files << " files (levels 0-2), max area defect " << fmt( worst, 3 ) << " (tol " << areaTol << ")";
  }

} // namespace

int main ()
{
  const std::vector< std::pair< std::string, std::function< void( Outcome & ) > > > criteria{
    { "A1", a1 }, { "A2", a2 }, { "A3", a3 }, { "A4", a4 }, { "A5", a5 }, { "A6", a6 },
    { "A7", a7 }, { "A8", a8 }, { "A9", a9 }, { "A10", a10 }, { "A11", a11 } };
  int failed = 0;
  for( const auto &[ name, check ] : criteria )
  {
    Outcome o;
    try
    {
      check( o );
    }
    catch( const std::exception &e )
    {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += o.pass ? 0 : 1;
    std::cout << name << " " << ( o.pass ? "PASS" : "FAIL" ) << " " << o.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
