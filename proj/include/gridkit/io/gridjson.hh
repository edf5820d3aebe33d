#ifndef GRIDKIT_IO_GRIDJSON_HH
#define GRIDKIT_IO_GRIDJSON_HH

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <gridkit/common/exceptions.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/grid/structured.hh>

namespace gridkit
{

  using GridDescription = std::variant< SimplexGridData, CartesianDomain >;

  namespace Impl
  {

    inline FieldVector jsonVector ( const nlohmann::json &j, const std::string &what )
    {
      if( !j.is_array() || j.empty() || j.size() > 3 )
        throw ShapeError( what + ": expected an array of 1 to 3 numbers" );
      FieldVector v( static_cast< int >( j.size() ) );
      for( std::size_t k = 0; k < j.size(); ++k )
      {
        if( !j[ k ].is_number() )
          throw ShapeError( what + ": entry " + std::to_string( k ) + " is not a number" );
        v[ k ] = j[ k ].get< double >();
      }
      return v;
    }

    inline const nlohmann::json &jsonMember ( const nlohmann::json &j, const std::string &key )
    {
      auto it = j.find( key );
      if( it == j.end() )
        throw ShapeError( "grid description: missing key \"" + key + "\"" );
      return *it;
    }

  } // namespace Impl

  /** \brief grid description from a parsed JSON object
   *
   *  {"vertices": [[x,y],...], "simplices": [[i,j,k],...]} describes a
   *  triangle grid, {"lower": [...], "upper": [...], "cells": [...]} a
   *  Cartesian domain.
   */
  inline GridDescription gridDescriptionFromJSON ( const nlohmann::json &j )
  {
    if( !j.is_object() )
      throw ShapeError( "grid description: expected a JSON object" );
    if( j.contains( "lower" ) || j.contains( "upper" ) || j.contains( "cells" ) )
    {
      const FieldVector lower = Impl::jsonVector( Impl::jsonMember( j, "lower" ), "lower" );
      const FieldVector upper = Impl::jsonVector( Impl::jsonMember( j, "upper" ), "upper" );
      const auto &jc = Impl::jsonMember( j, "cells" );
      if( !jc.is_array() )
        throw ShapeError( "cells: expected an array of integers" );
      std::vector< int > cells;
      for( const auto &c : jc )
      {
        if( !c.is_number_integer() )
          throw ShapeError( "cells: expected integers" );
        cells.push_back( c.get< int >() );
      }
      return cartesianDomain( lower, upper, std::move( cells ) );
    }

    SimplexGridData data;
    const auto &jv = Impl::jsonMember( j, "vertices" );
    const auto &js = Impl::jsonMember( j, "simplices" );
    if( !jv.is_array() || !js.is_array() )
      throw ShapeError( "grid description: vertices and simplices must be arrays" );
    for( std::size_t i = 0; i < jv.size(); ++i )
    {
      FieldVector v = Impl::jsonVector( jv[ i ], "vertex " + std::to_string( i ) );
      if( v.size() != 2 )
        throw ShapeError( "vertex " + std::to_string( i ) + ": expected 2 coordinates" );
      data.vertices.push_back( v );
    }
    for( std::size_t i = 0; i < js.size(); ++i )
    {
      const auto &s = js[ i ];
      if( !s.is_array() || s.size() != 3 || !std::all_of( s.begin(), s.end(), [] ( const auto &x ) { return x.is_number_integer(); } ) )
        throw ShapeError( "simplex " + std::to_string( i ) + ": expected 3 vertex numbers" );
      data.simplices.push_back( { s[ 0 ].get< int >(), s[ 1 ].get< int >(), s[ 2 ].get< int >() } );
    }
    return data;
  }

  inline nlohmann::json parseJSON ( const std::string &text )
  {
    try
    {
      return nlohmann::json::parse( text );
    }
    catch( const nlohmann::json::parse_error &e )
    {
      const std::size_t pos = std::min< std::size_t >( e.byte, text.size() );
      const auto line = 1 + std::count( text.begin(), text.begin() + ( pos > 0 ? pos - 1 : 0 ), '\n' );
      throw ParseError( "JSON parse error at line " + std::to_string( line ) + ": " + e.what() );
    }
  }

  inline GridDescription readGridJSON ( const std::string &path )
  {
    std::ifstream in( path );
    if( !in )
      throw IoError( "readGridJSON: cannot open '" + path + "'" );
    std::stringstream buffer;
    buffer << in.rdbuf();
    return gridDescriptionFromJSON( parseJSON( buffer.str() ) );
  }

  inline nlohmann::json toJSON ( const SimplexGridData &data )
  {
    nlohmann::json j;
    j[ "vertices" ] = nlohmann::json::array();
    for( const auto &v : data.vertices )
      j[ "vertices" ].push_back( std::vector< double >( v.begin(), v.end() ) );
    j[ "simplices" ] = data.simplices;
    return j;
  }

  inline nlohmann::json toJSON ( const CartesianDomain &domain )
  {
    return { { "lower", std::vector< double >( domain.lower.begin(), domain.lower.end() ) },
             { "upper", std::vector< double >( domain.upper.begin(), domain.upper.end() ) },
             { "cells", domain.cells } };
  }

} // namespace gridkit

#endif // GRIDKIT_IO_GRIDJSON_HH
