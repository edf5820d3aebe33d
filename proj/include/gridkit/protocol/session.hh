#ifndef GRIDKIT_PROTOCOL_SESSION_HH
#define GRIDKIT_PROTOCOL_SESSION_HH

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <gridkit/common/array2.hh>
#include <gridkit/common/exceptions.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/function/interpolation.hh>
#include <gridkit/function/pointdata.hh>
#include <gridkit/geometry/quadrature.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/io/triangulation.hh>
#include <gridkit/io/vtk.hh>
#include <gridkit/registry/gridregistry.hh>
#include <gridkit/registry/typename.hh>
#include <gridkit/schemes/l2norm.hh>

namespace gridkit
{

  //! line based duplex channel
  class Transport
  {
  public:
    virtual ~Transport () = default;
    //! false at end of input
    virtual bool readLine ( std::string &line ) = 0;
    virtual void writeLine ( const std::string &line ) = 0;
  };

  class StreamTransport : public Transport
  {
  public:
    StreamTransport ( std::istream &in, std::ostream &out ) : in_( in ), out_( out ) {}

    bool readLine ( std::string &line ) override { return static_cast< bool >( std::getline( in_, line ) ); }
    void writeLine ( const std::string &line ) override { out_ << line << '\n' << std::flush; }

  private:
    std::istream &in_;
    std::ostream &out_;
  };

  //! error carrying a protocol error code
  class ProtocolError : public std::runtime_error
  {
  public:
    ProtocolError ( std::string code, const std::string &what ) : std::runtime_error( what ), code_( std::move( code ) ) {}
    const std::string &code () const noexcept { return code_; }

  private:
    std::string code_;
  };

  //! the peer went away while a callback was pending
  class SessionClosed : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /** \brief newline delimited JSON session
   *
   *  Requests {"id", "op", "args"} are answered by {"id", "ok", "result"} or
   *  {"id", "ok": false, "error": {"code", "message"}}. While a request is in
   *  flight the server may send callback requests {"cb", "fn", "kind",
   *  "element"?, "points"} and waits for {"cb", "values"} before going on.
   */
  class Session
  {
  public:
    using json = nlohmann::ordered_json;

    explicit Session ( Transport &transport ) : transport_( transport ), registry_( makeGridRegistry() ) {}

    //! serves requests until the input ends
    void run ()
    {
      std::string line;
      while( transport_.readLine( line ) )
      {
        if( line.find_first_not_of( " \t\r" ) == std::string::npos )
          continue;
        try
        {
          transport_.writeLine( handleLine( line ).dump() );
        }
        catch( const SessionClosed & )
        {
          return;
        }
      }
    }

    //! response to one request line
    json handleLine ( const std::string &line )
    {
      json request;
      try
      {
        request = json::parse( line );
      }
      catch( const json::parse_error &e )
      {
        return failure( nullptr, "parse", e.what() );
      }
      if( !request.is_object() || !request.contains( "op" ) || !request[ "op" ].is_string() )
        return failure( request.is_object() && request.contains( "id" ) ? request[ "id" ] : json(), "parse",
                        "request must be an object with a string member 'op'" );
      const json id = request.value( "id", json() );
      if( !id.is_null() )
      {
        if( !seenIds_.insert( id.dump() ).second )
          return failure( id, "duplicate_id", "request id " + id.dump() + " was already used in this session" );
      }
      const std::string op = request[ "op" ];
      const json args = request.value( "args", json::object() );
      if( !args.is_object() )
        return failure( id, "bad_args", "args must be an object" );

      callbacksInRequest_ = 0;
      try
      {
        return { { "id", id }, { "ok", true }, { "result", dispatch( op, args ) } };
      }
      catch( const SessionClosed & )
      {
        throw;
      }
      catch( const ProtocolError &e )
      {
        return failure( id, e.code(), e.what() );
      }
      catch( const std::exception &e )
      {
        return failure( id, errorCode( e ), e.what() );
      }
    }

    //! number of callback requests issued during the last request
    long callbacksInRequest () const noexcept { return callbacksInRequest_; }

  private:
    struct FunctionEntry
    {
      std::string grid;
      std::string kind;
      GridFunction function;
    };

    struct GridEntry
    {
      GridView view;
      TypeDescriptor descriptor;
    };

    static json failure ( const json &id, const std::string &code, const std::string &message )
    {
      return { { "id", id }, { "ok", false }, { "error", { { "code", code }, { "message", message } } } };
    }

    static std::string errorCode ( const std::exception &e )
    {
      if( dynamic_cast< const InvalidationError * >( &e ) ) return "invalidated";
      if( dynamic_cast< const CapabilityError * >( &e ) ) return "capability";
      if( dynamic_cast< const ShapeError * >( &e ) ) return "shape";
      if( dynamic_cast< const ConstructionError * >( &e ) ) return "construction";
      if( dynamic_cast< const DomainError * >( &e ) ) return "domain";
      if( dynamic_cast< const LookupError * >( &e ) ) return "lookup";
      if( dynamic_cast< const IoError * >( &e ) ) return "io";
      if( dynamic_cast< const NumericError * >( &e ) || dynamic_cast< const ConvergenceError * >( &e ) ) return "numeric";
      if( dynamic_cast< const json::exception * >( &e ) ) return "bad_args";
      return "internal";
    }

    json dispatch ( const std::string &op, const json &args )
    {
      if( op == "createGrid" ) return createGrid( args );
      if( op == "globalRefine" ) return globalRefine( args );
      if( op == "adapt" ) return adapt( args );
      if( op == "registerFunction" ) return registerFunction( args );
      if( op == "interpolateP1" ) return interpolate( args );
      if( op == "l2error" ) return l2error( args );
      if( op == "writeVTK" ) return writeVTKFile( args );
      if( op == "triangulation" ) return triangulationOf( args );
      if( op == "pointData" ) return pointDataOf( args );
      if( op == "size" ) return sizeOf( args );
      if( op == "coordinates" ) return coordinatesOf( args );
      if( op == "describe" ) return describe( args );
      throw ProtocolError( "unknown_op", "unknown operation '" + op + "'" );
    }

    static const json &member ( const json &args, const std::string &key )
    {
      auto it = args.find( key );
      if( it == args.end() )
        throw ProtocolError( "bad_args", "missing argument '" + key + "'" );
      return *it;
    }

    GridEntry &grid ( const json &args )
    {
      const std::string name = member( args, "grid" ).get< std::string >();
      auto it = grids_.find( name );
      if( it == grids_.end() )
        throw ProtocolError( "unknown_handle", "no grid '" + name + "'" );
      return it->second;
    }

    FunctionEntry &function ( const std::string &name )
    {
      auto it = functions_.find( name );
      if( it == functions_.end() )
        throw ProtocolError( "unknown_handle", "no function '" + name + "'" );
      return it->second;
    }

    static json sizes ( const GridView &view )
    {
      return { { "elements", view.size( 0 ) }, { "vertices", view.size( view.dimension() ) } };
    }

    static json rows ( const Array2 &a )
    {
      json result = json::array();
      for( std::size_t i = 0; i < a.rows(); ++i )
        result.push_back( std::vector< double >( a.row( i ).begin(), a.row( i ).end() ) );
      return result;
    }

    json createGrid ( const json &args )
    {
      std::string factory;
      json params;
      if( args.contains( "cartesian" ) )
        factory = "structuredGrid", params = args[ "cartesian" ];
      else if( args.contains( "conform" ) )
        factory = "conformGrid", params = args[ "conform" ];
      else if( args.contains( "simplex" ) )
        factory = "simplexGrid", params = args[ "simplex" ];
      else
      {
        factory = member( args, "factory" ).get< std::string >();
        params = member( args, "params" );
      }
      auto tagged = registry_.resolve( factory, nlohmann::json::parse( params.dump() ) );
      const std::string name = "g" + std::to_string( gridCount_++ );
      grids_.emplace( name, GridEntry{ tagged.object, tagged.descriptor } );
      json result = { { "grid", name } };
      result.update( sizes( tagged.object ) );
      return result;
    }

    json globalRefine ( const json &args )
    {
      GridEntry &g = grid( args );
      g.view.hierarchicalGrid().globalRefine( args.value( "levels", 1 ) );
      return sizes( g.view );
    }

    //! the marker is evaluated by one callback over all element centers
    json adapt ( const json &args )
    {
      GridEntry &g = grid( args );
      const std::string fn = member( args, "fn" ).get< std::string >();
      std::vector< FieldVector > centers;
      for( const Entity &e : g.view.elements() )
        centers.push_back( e.geometry().center() );
      const Array2 marks = callback( fn, "global", std::nullopt, centers, 1 );
      const IndexSet indexSet = g.view.indexSet();
      g.view.hierarchicalGrid().adapt( [ & ] ( const Entity &e ) {
        return marks( indexSet.index( e ), 0 ) > 0.0 ? Marker::refine : Marker::keep;
      } );
      return sizes( g.view );
    }

    json registerFunction ( const json &args )
    {
      GridEntry &g = grid( args );
      const std::string gridName = member( args, "grid" ).get< std::string >();
      const std::string kind = args.value( "kind", std::string( "global" ) );
      const int range = args.value( "range", 1 );
      if( range < 1 )
        throw ProtocolError( "bad_args", "range must be positive" );
      const std::string name = "f" + std::to_string( functionCount_++ );
      GridFunction gf;
      if( kind == "global" )
        gf = GridFunction::fromGlobal( g.view, [ this, name, range ] ( std::span< const FieldVector > xs ) {
          return callback( name, "global", std::nullopt, xs, range );
        }, range );
      else if( kind == "local" )
      {
        const GridView view = g.view;
        gf = GridFunction::fromLocal( view, [ this, name, range, view ] ( const Entity &e, std::span< const FieldVector > xs ) {
          return callback( name, "local", view.indexSet().index( e ), xs, range );
        }, range );
      }
      else
        throw ProtocolError( "bad_args", "kind must be 'global' or 'local'" );
      functions_.emplace( name, FunctionEntry{ gridName, kind, gf } );
      return { { "fn", name } };
    }

    //! vertex values are requested in a single callback
    json interpolate ( const json &args )
    {
      FunctionEntry &source = function( member( args, "fn" ).get< std::string >() );
      const GridView &view = grids_.at( source.grid ).view;
      MCMGMapper m( view, Layout::perType( { { vertex, 1 } } ) );
      std::vector< FieldVector > points( m.size() );
      for( const Entity &v : view.vertices() )
        points[ m.index( v ) ] = v.geometry().center();
      const Array2 values = source.function.evalGlobal( points );
      std::vector< double > data( m.size() );
      for( std::size_t i = 0; i < data.size(); ++i )
        data[ i ] = values( i, 0 );
      const std::string name = "f" + std::to_string( functionCount_++ );
      functions_.emplace( name, FunctionEntry{ source.grid, "p1", p1Function( std::move( m ), std::move( data ) ) } );
      return { { "fn", name } };
    }

    //! L2 norm of fn, or of fn - minus when given
    json l2error ( const json &args )
    {
      FunctionEntry &f = function( member( args, "fn" ).get< std::string >() );
      const GridView &view = grids_.at( f.grid ).view;
      const int order = args.value( "order", 5 );
      const bool vectorized = args.value( "vectorized", true );
      GridFunction integrand = f.function;
      if( args.contains( "minus" ) )
      {
        FunctionEntry &g = function( args[ "minus" ].get< std::string >() );
        if( g.grid != f.grid )
          throw ProtocolError( "bad_args", "functions live on different grids" );
        integrand = GridFunction::fromLocal( view, [ a = f.function, b = g.function ] ( const Entity &e, std::span< const FieldVector > x ) {
          Array2 va = a.evaluate( e, x );
          const Array2 vb = b.evaluate( e, x );
          if( va.cols() != vb.cols() )
            throw ShapeError( "l2error: functions differ in range" );
          for( std::size_t i = 0; i < va.rows(); ++i )
            for( std::size_t k = 0; k < va.cols(); ++k )
              va( i, k ) -= vb( i, k );
          return va;
        }, f.function.rangeDimension() );
      }
      const double value = std::sqrt( l2Norm2( view, integrand, QuadratureRules( order ),
                                               vectorized ? EvaluationMode::batch : EvaluationMode::loop ) );
      return { { "l2error", value }, { "callbacks", callbacksInRequest_ } };
    }

    json writeVTKFile ( const json &args )
    {
      GridEntry &g = grid( args );
      auto collect = [ this ] ( const json &j ) {
        NamedFunctions result;
        if( !j.is_null() )
          for( auto it = j.begin(); it != j.end(); ++it )
            result.emplace_back( it.key(), function( it.value().get< std::string >() ).function );
        return result;
      };
      const std::string file = writeVTK( g.view, member( args, "name" ).get< std::string >(), collect( args.value( "pointData", json() ) ),
                                         collect( args.value( "cellData", json() ) ), args.value( "subsampling", 0 ) );
      return { { "file", file } };
    }

    json triangulationOf ( const json &args )
    {
      const Triangulation t = triangulation( grid( args ).view, args.value( "level", 0 ) );
      return { { "points", rows( t.points ) }, { "triangles", t.triangles } };
    }

    json pointDataOf ( const json &args )
    {
      FunctionEntry &f = function( member( args, "fn" ).get< std::string >() );
      return { { "values", rows( pointData( f.function, args.value( "level", 0 ) ) ) } };
    }

    json sizeOf ( const json &args )
    {
      return { { "size", grid( args ).view.size( args.value( "codim", 0 ) ) } };
    }

    json coordinatesOf ( const json &args )
    {
      return { { "coordinates", rows( grid( args ).view.coordinates() ) } };
    }

    json describe ( const json &args )
    {
      const TypeDescriptor &d = grid( args ).descriptor;
      return { { "typeName", d.typeName }, { "includes", d.includes }, { "moduleKey", moduleKey( d ) } };
    }

    //! synchronous reverse call; blocks until the matching reply arrives
    Array2 callback ( const std::string &fn, const std::string &kind, std::optional< int > element,
                      std::span< const FieldVector > points, int range )
    {
      const long cb = nextCallback_++;
      ++callbacksInRequest_;
      json message = { { "cb", cb }, { "fn", fn }, { "kind", kind } };
      if( element )
        message[ "element" ] = *element;
      json pts = json::array();
      for( const FieldVector &x : points )
        pts.push_back( std::vector< double >( x.begin(), x.end() ) );
      message[ "points" ] = std::move( pts );
      transport_.writeLine( message.dump() );

      std::string line;
      if( !transport_.readLine( line ) )
        throw SessionClosed( "input ended while waiting for callback " + std::to_string( cb ) );
      json reply;
      try
      {
        reply = json::parse( line );
      }
      catch( const json::parse_error &e )
      {
        throw ProtocolError( "callback_error", std::string( "malformed callback reply: " ) + e.what() );
      }
      if( !reply.is_object() || reply.value( "cb", json() ) != json( cb ) )
        throw ProtocolError( "callback_error", "expected reply to callback " + std::to_string( cb ) );
      if( reply.contains( "error" ) )
        throw ProtocolError( "callback_error", "callback " + std::to_string( cb ) + " failed: " + reply[ "error" ].dump() );
      const json &values = member( reply, "values" );
      if( !values.is_array() || values.size() != points.size() )
        throw ProtocolError( "callback_shape", "callback " + std::to_string( cb ) + " returned "
                             + std::to_string( values.is_array() ? values.size() : 0 ) + " values for " + std::to_string( points.size() ) + " points" );
      Array2 result( points.size(), range );
      for( std::size_t i = 0; i < values.size(); ++i )
      {
        const json &v = values[ i ];
        if( range == 1 && v.is_number() )
          result( i, 0 ) = v.get< double >();
        else if( v.is_array() && static_cast< int >( v.size() ) == range && std::all_of( v.begin(), v.end(), [] ( const json &c ) { return c.is_number(); } ) )
          for( int k = 0; k < range; ++k )
            result( i, k ) = v[ k ].get< double >();
        else
          throw ProtocolError( "callback_shape", "callback " + std::to_string( cb ) + ": value " + std::to_string( i ) + " does not have "
                               + std::to_string( range ) + " components" );
      }
      return result;
    }

    Transport &transport_;
    Registry< GridView > registry_;
    std::map< std::string, GridEntry > grids_;
    std::map< std::string, FunctionEntry > functions_;
    std::set< std::string > seenIds_;
    int gridCount_ = 0;
    int functionCount_ = 0;
    long nextCallback_ = 0;
    long callbacksInRequest_ = 0;
  };

} // namespace gridkit

#endif // GRIDKIT_PROTOCOL_SESSION_HH
