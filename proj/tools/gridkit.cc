#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <gridkit/common/exceptions.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/grid/structured.hh>
#include <gridkit/io/gridjson.hh>
#include <gridkit/io/vtk.hh>
#include <gridkit/parallel/minrank.hh>
#include <gridkit/protocol/session.hh>
#include <gridkit/registry/gridregistry.hh>
#include <gridkit/schemes/finitevolume.hh>
#include <gridkit/schemes/lagrangeerror.hh>
#include <gridkit/schemes/p2fem.hh>

using namespace gridkit;

namespace
{

  constexpr int exitBadFlags = 2;
  constexpr int exitFailure = 3;

  FieldVector parseVector ( const std::string &text, const std::string &what )
  {
    std::vector< double > values;
    std::stringstream in( text );
    std::string item;
    while( std::getline( in, item, ',' ) )
    {
      std::size_t pos = 0;
      double v = 0.0;
      try
      {
        v = std::stod( item, &pos );
      }
      catch( const std::exception & )
      {
        pos = 0;
      }
      if( pos == 0 || pos != item.size() )
        throw CLI::ValidationError( what, "'" + item + "' is not a number" );
      values.push_back( v );
    }
    if( values.empty() || values.size() > 3 )
      throw CLI::ValidationError( what, "expected 1 to 3 comma separated numbers" );
    return FieldVector( std::span< const double >( values ) );
  }

  std::vector< int > parseCells ( const std::string &text )
  {
    const FieldVector v = parseVector( text, "cells" );
    std::vector< int > cells;
    for( double c : v )
    {
      if( c != std::floor( c ) )
        throw CLI::ValidationError( "cells", "cell counts must be integers" );
      cells.push_back( static_cast< int >( c ) );
    }
    return cells;
  }

  //! a grid file holds the registry factory name and its parameters
  nlohmann::json gridFile ( const std::string &factory, const nlohmann::json &params )
  {
    return { { "factory", factory }, { "params", params } };
  }

  GridView loadGrid ( const std::string &path )
  {
    std::ifstream in( path );
    if( !in )
      throw IoError( "cannot open grid file '" + path + "'" );
    std::stringstream buffer;
    buffer << in.rdbuf();
    const nlohmann::json j = parseJSON( buffer.str() );
    if( !j.contains( "factory" ) || !j.contains( "params" ) )
      throw ShapeError( "grid file '" + path + "': expected members factory and params" );
    auto registry = makeGridRegistry();
    return registry.resolve( j[ "factory" ].get< std::string >(), j[ "params" ] ).object;
  }

  std::ofstream openOutput ( const std::string &path )
  {
    std::ofstream out( path );
    if( !out )
      throw IoError( "cannot write '" + path + "'" );
    out << std::setprecision( 17 );
    return out;
  }

  int makeGrid ( const std::vector< std::string > &cartesian, const std::string &jsonPath, const std::string &kind,
                 const std::string &outPath )
  {
    nlohmann::json file;
    if( !cartesian.empty() )
    {
      const CartesianDomain domain = cartesianDomain( parseVector( cartesian[ 0 ], "lower" ), parseVector( cartesian[ 1 ], "upper" ),
                                                      parseCells( cartesian[ 2 ] ) );
      file = gridFile( "structuredGrid", toJSON( domain ) );
    }
    else
    {
      const GridDescription d = readGridJSON( jsonPath );
      if( !std::holds_alternative< SimplexGridData >( d ) )
        throw ShapeError( "--json: expected vertices and simplices" );
      file = gridFile( kind == "conform" ? "conformGrid" : "simplexGrid", toJSON( std::get< SimplexGridData >( d ) ) );
    }
    auto registry = makeGridRegistry();
    const GridView view = registry.resolve( file[ "factory" ].get< std::string >(), file[ "params" ] ).object;
    if( !outPath.empty() )
    {
      std::ofstream out = openOutput( outPath );
      out << file.dump( 1 ) << '\n';
    }
    std::cout << "elements=" << view.size( 0 ) << " vertices=" << view.size( view.dimension() ) << '\n';
    return 0;
  }

  int l2error ( const std::string &gridPath, int refine, int order, const std::string &mode, bool timings )
  {
    const auto start = std::chrono::steady_clock::now();
    const LagrangeInterpolationError problem = gridPath.empty() ? LagrangeInterpolationError( refine )
                                                                : LagrangeInterpolationError( loadGrid( gridPath ), refine );
    const auto setup = std::chrono::steady_clock::now();
    double value = 0.0;
    problem.error().resetCallbacks();
    if( mode == "kernel" )
      value = problem.l2ErrorKernel( order );
    else
      value = problem.l2Error( order, mode == "loop" ? EvaluationMode::loop : EvaluationMode::batch );
    const auto end = std::chrono::steady_clock::now();
    std::cout << std::setprecision( 17 ) << "l2error=" << value << " callbacks=" << problem.error().callbacks() << '\n';
    if( timings )
      std::cerr << "elements=" << problem.gridView().size( 0 )
                << " setup=" << std::chrono::duration< double >( setup - start ).count() << "s"
                << " integration=" << std::chrono::duration< double >( end - setup ).count() << "s\n";
    return 0;
  }

  int fvTransport ( const std::string &gridPath, int cells, double tEnd, double cfl, int vtkEvery, const std::string &initial,
                    const std::string &csvPath )
  {
    const GridView view = gridPath.empty() ? structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { cells, cells } )
                                           : loadGrid( gridPath );
    TransportBoundary boundary = translatedAnnulus;
    std::function< double( const FieldVector & ) > c0 = annulus;
    if( initial == "constant" )
    {
      boundary = [] ( double, const FieldVector & ) { return 1.0; };
      c0 = [] ( const FieldVector & ) { return 1.0; };
    }

    std::ofstream file;
    if( !csvPath.empty() )
      file = openOutput( csvPath );
    std::ostream &csv = csvPath.empty() ? std::cout : file;
    csv << std::setprecision( 17 ) << "step,t,tau,mass,min,max\n";

    FVState state = fvInitialize( view, elementMapper( view ), gridFunctionFromGlobal( view, c0 ) );
    const double mass0 = fvMass( view, state );
    auto row = [ & ] ( int step, const FVState &s ) {
      const auto [ mn, mx ] = std::minmax_element( s.data.begin(), s.data.end() );
      csv << step << ',' << s.t << ',' << s.tau << ',' << fvMass( view, s ) << ',' << *mn << ',' << *mx << '\n';
    };
    auto vtk = [ & ] ( int step, const FVState &s ) {
      if( vtkEvery > 0 && step % vtkEvery == 0 )
      {
        std::ostringstream name;
        name << "fv-" << std::setw( 5 ) << std::setfill( '0' ) << step;
        writeVTK( view, name.str(), {}, { { "u", fvFunction( s ) } } );
      }
    };
    row( 0, state );
    vtk( 0, state );

    double outflow = 0.0;
    int step = 0;
    while( state.t < tEnd )
    {
      FVStepReport report;
      fvStep( state, view, boundary, cfl, &report );
      outflow += report.boundaryFlux;
      row( ++step, state );
      vtk( step, state );
    }
    const double defect = std::abs( fvMass( view, state ) - mass0 + outflow );
    std::cerr << std::setprecision( 17 ) << "steps=" << step << " t=" << state.t
              << " mass_drift=" << std::abs( fvMass( view, state ) - mass0 ) << " conservation_defect=" << defect << '\n';
    return 0;
  }

  int femPoisson ( int refine, const std::string &csvPath )
  {
    std::ofstream file;
    if( !csvPath.empty() )
      file = openOutput( csvPath );
    std::ostream &csv = csvPath.empty() ? std::cout : file;
    csv << std::setprecision( 17 ) << "h,dofs,l2error,rate\n";
    for( const PoissonStep &s : poissonConvergence( refine ) )
    {
      csv << s.h << ',' << s.dofs << ',' << s.l2error << ',';
      if( !std::isnan( s.rate ) )
        csv << s.rate;
      csv << '\n';
    }
    return 0;
  }

  int partitionDemo ( int ranks, int cells, const std::string &csvPath )
  {
    const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, { cells, cells } );
    const MinRankDemo demo( view, ranks );
    if( !csvPath.empty() )
    {
      std::ofstream out = openOutput( csvPath );
      demo.writeCSV( out );
    }
    const int violations = demo.violations();
    std::cout << "ranks=" << ranks << " shared=" << demo.sharedVertices() << " violations=" << violations << '\n';
    return violations == 0 ? 0 : exitFailure;
  }

  int adaptDemo ( bool vtk )
  {
    GridView view = conformGrid( fanGridData() );
    auto &grid = view.hierarchicalGrid();
    auto report = [ & ] ( const std::string &stage ) {
      std::cout << stage << " elements=" << view.size( 0 ) << " vertices=" << view.size( 2 ) << '\n';
      if( vtk )
        writeVTK( view, "adapt-" + stage );
    };
    report( "macro" );
    grid.globalRefine( 2 );
    report( "global2" );
    for( int i = 1; i <= 4; ++i )
    {
      const double radius = std::pow( 0.64, i );
      grid.adapt( [ radius ] ( const Entity &e ) { return e.geometry().center().two_norm() < radius ? Marker::refine : Marker::keep; } );
      report( "round" + std::to_string( i ) );
    }
    return 0;
  }

  //! socket wrapper for serving a single TCP client
  class SocketTransport : public Transport
  {
  public:
    explicit SocketTransport ( int fd ) : fd_( fd ) {}
    ~SocketTransport () override { ::close( fd_ ); }

    bool readLine ( std::string &line ) override
    {
      for( ;; )
      {
        const auto pos = buffer_.find( '\n' );
        if( pos != std::string::npos )
        {
          line = buffer_.substr( 0, pos );
          buffer_.erase( 0, pos + 1 );
          return true;
        }
        char chunk[ 4096 ];
        const ssize_t n = ::read( fd_, chunk, sizeof( chunk ) );
        if( n <= 0 )
        {
          if( buffer_.empty() )
            return false;
          line.swap( buffer_ );
          buffer_.clear();
          return true;
        }
        buffer_.append( chunk, n );
      }
    }

    void writeLine ( const std::string &line ) override
    {
      const std::string data = line + '\n';
      std::size_t sent = 0;
      while( sent < data.size() )
      {
        const ssize_t n = ::write( fd_, data.data() + sent, data.size() - sent );
        if( n <= 0 )
          throw SessionClosed( "connection closed" );
        sent += n;
      }
    }

  private:
    int fd_;
    std::string buffer_;
  };

  int serveTcp ( int port )
  {
    const int server = ::socket( AF_INET, SOCK_STREAM, 0 );
    if( server < 0 )
      throw IoError( "serve: cannot create socket" );
    const int yes = 1;
    ::setsockopt( server, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof( yes ) );
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl( INADDR_LOOPBACK );
    addr.sin_port = htons( static_cast< uint16_t >( port ) );
    if( ::bind( server, reinterpret_cast< sockaddr * >( &addr ), sizeof( addr ) ) < 0 || ::listen( server, 1 ) < 0 )
    {
      ::close( server );
      throw IoError( "serve: cannot listen on port " + std::to_string( port ) );
    }
    std::cerr << "listening on 127.0.0.1:" << port << '\n';
    const int client = ::accept( server, nullptr, nullptr );
    ::close( server );
    if( client < 0 )
      throw IoError( "serve: accept failed" );
    SocketTransport transport( client );
    Session( transport ).run();
    return 0;
  }

} // namespace

int main ( int argc, char **argv )
{
  CLI::App app( "gridkit: grids, grid functions and small solvers" );
  app.require_subcommand( 1 );

  auto *mk = app.add_subcommand( "make-grid", "construct a grid, print its size and store its description" );
  std::vector< std::string > cartesian;
  std::string jsonPath, kind = "conform", outPath = "grid.json";
  auto *cartOpt = mk->add_option( "--cartesian", cartesian, "LOWER UPPER CELLS, each comma separated" )->expected( 3 );
  auto *jsonOpt = mk->add_option( "--json", jsonPath, "JSON file with vertices and simplices" );
  mk->add_option( "--kind", kind, "grid for --json input" )->check( CLI::IsMember( { "conform", "simplex" } ) );
  mk->add_option( "--out", outPath, "where to store the grid description (empty: do not store)" );
  cartOpt->excludes( jsonOpt );
  mk->callback( [ & ] {
    if( cartesian.empty() && jsonPath.empty() )
      throw CLI::RequiredError( "--cartesian or --json" );
  } );

  auto *l2 = app.add_subcommand( "l2error", "L2 error of the P1 interpolant of cos(2 pi/(0.3+|x0 x1|))" );
  std::string gridPath, mode = "batch";
  int refine = 4, order = 5;
  bool timings = false;
  l2->add_option( "--grid", gridPath, "grid file from make-grid (default: the locally refined fan grid)" );
  l2->add_option( "--refine", refine, "global refinements" )->check( CLI::Range( 0, 10 ) );
  l2->add_option( "--order", order, "quadrature order" )->check( CLI::NonNegativeNumber );
  l2->add_option( "--mode", mode, "loop, batch or kernel" )->check( CLI::IsMember( { "loop", "batch", "kernel" } ) );
  l2->add_flag( "--timings", timings, "print wall clock times to stderr" );

  auto *fv = app.add_subcommand( "fv-transport", "upwind finite volumes for u_t + u_x + u_y = 0" );
  std::string fvGrid, initial = "annulus", fvCsv;
  int fvCells = 64, vtkEvery = 0;
  double tEnd = 0.5, cfl = defaultCfl;
  fv->add_option( "--grid", fvGrid, "grid file from make-grid (default: unit square)" );
  fv->add_option( "--cells", fvCells, "cells per direction of the default grid" )->check( CLI::PositiveNumber );
  fv->add_option( "--tend", tEnd, "end time" )->check( CLI::PositiveNumber );
  fv->add_option( "--cfl", cfl, "CFL number" )->check( CLI::PositiveNumber );
  fv->add_option( "--vtk-every", vtkEvery, "write fv-NNNNN.vtu every N steps (0: never)" )->check( CLI::NonNegativeNumber );
  fv->add_option( "--initial", initial, "annulus or constant" )->check( CLI::IsMember( { "annulus", "constant" } ) );
  fv->add_option( "--csv", fvCsv, "CSV output file (default: stdout)" );

  auto *fem = app.add_subcommand( "fem-poisson", "P2 finite elements for a manufactured Poisson problem" );
  int femRefine = 3;
  std::string femCsv;
  fem->add_option( "--refine", femRefine, "number of refinements" )->check( CLI::Range( 0, 6 ) );
  fem->add_option( "--csv", femCsv, "CSV output file (default: stdout)" );

  auto *part = app.add_subcommand( "partition-demo", "minimum rank communication on a simulated partition" );
  int ranks = 5, partCells = 20;
  std::string partCsv;
  part->add_option( "--ranks", ranks, "number of simulated ranks" )->check( CLI::PositiveNumber );
  part->add_option( "--cells", partCells, "cells per direction" )->check( CLI::PositiveNumber );
  part->add_option( "--csv", partCsv, "write vertexGlobalIndex,rank,value rows" );

  auto *adapt = app.add_subcommand( "adapt-demo", "bisection refinement towards the origin" );
  bool adaptVtk = false;
  adapt->add_flag( "--vtk", adaptVtk, "write one .vtu file per stage" );

  auto *serve = app.add_subcommand( "serve", "run a protocol session" );
  bool stdio = false;
  int port = 0;
  auto *stdioOpt = serve->add_flag( "--stdio", stdio, "serve on stdin/stdout" );
  auto *tcpOpt = serve->add_option( "--tcp", port, "serve one client on 127.0.0.1:PORT" )->check( CLI::Range( 1, 65535 ) );
  stdioOpt->excludes( tcpOpt );
  serve->callback( [ & ] {
    if( !stdio && port == 0 )
      throw CLI::RequiredError( "--stdio or --tcp" );
  } );

  try
  {
    app.parse( argc, argv );
  }
  catch( const CLI::CallForHelp &e )
  {
    return app.exit( e );
  }
  catch( const CLI::ParseError &e )
  {
    app.exit( e );
    return exitBadFlags;
  }

  try
  {
    if( *mk )
      return makeGrid( cartesian, jsonPath, kind, outPath );
    if( *l2 )
      return l2error( gridPath, refine, order, mode, timings );
    if( *fv )
      return fvTransport( fvGrid, fvCells, tEnd, cfl, vtkEvery, initial, fvCsv );
    if( *fem )
      return femPoisson( femRefine, femCsv );
    if( *part )
      return partitionDemo( ranks, partCells, partCsv );
    if( *adapt )
      return adaptDemo( adaptVtk );
    if( *serve )
    {
      if( stdio )
      {
        StreamTransport transport( std::cin, std::cout );
        Session( transport ).run();
        return 0;
      }
      return serveTcp( port );
    }
  }
  catch( const CLI::ValidationError &e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exitBadFlags;
  }
  catch( const std::exception &e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exitFailure;
  }
  return 0;
}
