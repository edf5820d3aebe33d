#include <random>
#include <regex>
#include <set>

#include <gtest/gtest.h>

#include <gridkit/registry/gridregistry.hh>
#include <gridkit/registry/registry.hh>
#include <gridkit/registry/typename.hh>

using namespace gridkit;

TEST( TypeName, Composition )
{
  const TypeDescriptor a = generateTypeName( "MyModule::FooImplA", { 2LL } );
  EXPECT_EQ( a.typeName, "MyModule::FooImplA< 2 >" );
  EXPECT_TRUE( a.includes.empty() );
  const TypeDescriptor c = generateTypeName( "MyModule::FooImplC", { a } );
  EXPECT_EQ( c.typeName, "MyModule::FooImplC< MyModule::FooImplA< 2 > >" );
  EXPECT_EQ( generateTypeName( "X" ).typeName, "X" );
  EXPECT_EQ( generateTypeName( "Pair", { 1LL, std::string( "double" ), -3LL } ).typeName, "Pair< 1, double, -3 >" );
}

TEST( TypeName, IncludesAreOrderedUnion )
{
  const TypeDescriptor a = generateTypeName( "A", {}, { "a.hh", "common.hh" } );
  const TypeDescriptor b = generateTypeName( "B", {}, { "common.hh", "b.hh" } );
  const TypeDescriptor c = generateTypeName( "C", { a, b }, { "c.hh", "a.hh" } );
  EXPECT_EQ( c.includes, ( std::vector< std::string >{ "c.hh", "a.hh", "common.hh", "b.hh" } ) );

  // nesting through descriptors equals the one pass composition
  const TypeDescriptor inner = generateTypeName( "In", { 3LL } );
  const TypeDescriptor nested = generateTypeName( "Out", { inner, 4LL } );
  const TypeDescriptor flat = generateTypeName( "Out", { std::string( "In< 3 >" ), 4LL } );
  EXPECT_EQ( nested.typeName, flat.typeName );
}

TEST( MD5, KnownVectors )
{
  EXPECT_EQ( md5Hex( "" ), "d41d8cd98f00b204e9800998ecf8427e" );
  EXPECT_EQ( md5Hex( "a" ), "0cc175b9c0f1b6a831c399e269772661" );
  EXPECT_EQ( md5Hex( "abc" ), "900150983cd24fb0d6963f7d28e17f72" );
  EXPECT_EQ( md5Hex( "message digest" ), "f96b697d7cb7938d525a2f31aaf161d0" );
  EXPECT_EQ( md5Hex( "12345678901234567890123456789012345678901234567890123456789012345678901234567890" ),
             "57edf4a22be3c955ac49da2e2107b67a" );
}

TEST( ModuleKey, Format )
{
  // digests computed with coreutils md5sum
  EXPECT_EQ( moduleKey( TypeDescriptor{ "MyModule::Foo", {} } ), "MyModule_Foo_53f103e04d46d2191d9f5428003ec555" );
  EXPECT_EQ( moduleKey( TypeDescriptor{ "MyModule::FooImplA< 2 >", { "foo.hh" } } ),
             "MyModule_FooImplA_b57d61b23d18e8894cbb9e0a5c4c710d" );

  const TypeDescriptor d = generateTypeName( "gridkit::StructuredGrid", { 2LL }, { "gridkit/grid/structured.hh" } );
  EXPECT_EQ( moduleKey( d ), moduleKey( d ) );
  TypeDescriptor other = d;
  other.includes.push_back( "extra.hh" );
  EXPECT_NE( moduleKey( d ), moduleKey( other ) );
  const std::regex format( "[A-Za-z_][A-Za-z0-9_]*_[0-9a-f]{32}" );
  EXPECT_TRUE( std::regex_match( moduleKey( d ), format ) );
  EXPECT_TRUE( std::regex_match( moduleKey( TypeDescriptor{ "3d::<>", {} } ), format ) );
}

TEST( ModuleKey, NoCollisionsOnRandomDescriptors )
{
  std::mt19937 rng( 2024 );
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_:";
  std::uniform_int_distribution< int > letter( 0, int( alphabet.size() ) - 1 ), length( 1, 12 ), count( 0, 3 ), value( -5, 50 );
  auto word = [ & ] () {
    std::string s;
    for( int n = length( rng ); n > 0; --n )
      s += alphabet[ letter( rng ) ];
    return s;
  };
  const std::regex format( "[A-Za-z_][A-Za-z0-9_]*_[0-9a-f]{32}" );
  std::set< std::string > names, keys;
  while( names.size() < 1000 )
  {
    std::vector< TypeArgument > args;
    for( int n = count( rng ); n > 0; --n )
    {
      if( rng() % 2 )
        args.emplace_back( static_cast< long long >( value( rng ) ) );
      else
        args.emplace_back( generateTypeName( word() ) );
    }
    std::vector< std::string > includes;
    for( int n = count( rng ); n > 0; --n )
      includes.push_back( word() + ".hh" );
    const TypeDescriptor d = generateTypeName( word(), args, includes );
    if( !names.insert( d.typeName + "|" + std::to_string( d.includes.size() ) ).second )
      continue;
    const std::string key = moduleKey( d );
    EXPECT_TRUE( std::regex_match( key, format ) ) << key;
    keys.insert( key );
  }
  EXPECT_EQ( keys.size(), names.size() );
}

TEST( Registry, InsertClass )
{
  Registry< int > registry;
  const auto [ h1, new1 ] = registry.insertClass( TypeDescriptor{ "A", {} }, [] ( const nlohmann::json & ) { return 1; } );
  EXPECT_TRUE( new1 );
  const auto [ h2, new2 ] = registry.insertClass( TypeDescriptor{ "A", {} }, [] ( const nlohmann::json & ) { return 2; } );
  EXPECT_FALSE( new2 );
  EXPECT_EQ( h1, h2 );
  EXPECT_EQ( registry.entry( h1 ).factory( {} ), 1 );
  const auto [ h3, new3 ] = registry.insertClass( TypeDescriptor{ "B", {} }, [] ( const nlohmann::json & ) { return 3; } );
  EXPECT_TRUE( new3 );
  EXPECT_NE( h3, h1 );
  ASSERT_EQ( registry.size(), 2u );
  EXPECT_EQ( registry.entries()[ 0 ].descriptor.typeName, "A" );
  EXPECT_EQ( registry.entries()[ 1 ].descriptor.typeName, "B" );
  EXPECT_TRUE( registry.contains( "B" ) );
  EXPECT_FALSE( registry.contains( "C" ) );
}

TEST( Registry, ResolveGrids )
{
  Registry< GridView > registry = makeGridRegistry();
  EXPECT_EQ( registry.factoryNames(), ( std::vector< std::string >{ "structuredGrid", "conformGrid", "simplexGrid" } ) );

  const nlohmann::json box = { { "lower", { 0.0, 0.0, 0.0 } }, { "upper", { 1.0, 1.0, 1.0 } }, { "cells", { 2, 3, 4 } } };
  const auto a = registry.resolve( "structuredGrid", box );
  EXPECT_EQ( a.descriptor.typeName, "gridkit::StructuredGrid< 3 >" );
  EXPECT_EQ( a.object.dimension(), 3 );
  EXPECT_EQ( a.object.size( 0 ), 24 );
  EXPECT_EQ( registry.cacheMisses(), 1u );
  const auto b = registry.resolve( "structuredGrid", box );
  EXPECT_EQ( b.descriptor, a.descriptor );
  EXPECT_EQ( registry.cacheHits(), 1u );

  const nlohmann::json fan = nlohmann::json::parse( R"({"vertices": [[0,0],[1,0],[0,1]], "simplices": [[0,1,2]]})" );
  const auto c = registry.resolve( "conformGrid", fan );
  EXPECT_EQ( c.descriptor.typeName, "gridkit::BisectionGrid< 2 >" );
  EXPECT_EQ( c.object.size( 0 ), 1 );
  const auto d = registry.resolve( "simplexGrid", fan );
  EXPECT_EQ( d.descriptor.typeName, "gridkit::QuarteringGrid< 2 >" );
  EXPECT_EQ( registry.size(), 3u );
  EXPECT_EQ( registry.cacheMisses(), 3u );

  try
  {
    registry.resolve( "yaspGrid", box );
    FAIL() << "expected LookupError";
  }
  catch( const LookupError &e )
  {
    const std::string what = e.what();
    for( const std::string name : { "structuredGrid", "conformGrid", "simplexGrid" } )
      EXPECT_NE( what.find( name ), std::string::npos ) << what;
  }
  EXPECT_THROW( registry.resolve( "conformGrid", box ), ShapeError );
}
