#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include <gridkit/function/interpolation.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/grid/structured.hh>
#include <gridkit/io/gridjson.hh>
#include <gridkit/io/triangulation.hh>
#include <gridkit/io/vtk.hh>
#include <gridkit/schemes/lagrangeerror.hh>

#include "oracles.hh"

using namespace gridkit;

namespace
{

  std::filesystem::path scratch ()
  {
    const auto dir = std::filesystem::temp_directory_path() / "gridkit-test-io";
    std::filesystem::create_directories( dir );
    return dir;
  }

  GridView adaptedFan ()
  {
    GridView view = conformGrid( fanGridData() );
    refineTowardsOrigin( view.hierarchicalGrid() );
    return view;
  }

  double triangulationArea ( const Triangulation &t )
  {
    const std::vector< double > &xy = t.points.data();
    double area = 0.0;
    for( const auto &tri : t.triangles )
      area += oracle::triangleArea( xy, 2, tri[ 0 ], tri[ 1 ], tri[ 2 ] );
    return area;
  }

} // namespace

TEST( Triangulation, CoversDomain )
{
  const GridView fan = adaptedFan();
  const GridView quads = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 2.0, 0.5 }, { 6, 3 } );
  for( int level = 0; level <= 2; ++level )
  {
    const Triangulation a = triangulation( fan, level );
    EXPECT_NEAR( triangulationArea( a ), 1.8, 1e-8 );
    EXPECT_EQ( a.triangles.size(), static_cast< std::size_t >( fan.size( 0 ) ) << ( 2 * level ) );
    const Triangulation b = triangulation( quads, level );
    EXPECT_NEAR( triangulationArea( b ), 1.0, 1e-8 );
    EXPECT_EQ( b.triangles.size(), 2 * ( static_cast< std::size_t >( quads.size( 0 ) ) << ( 2 * level ) ) );
  }
  const Triangulation t = triangulation( fan, 0 );
  EXPECT_EQ( t.points.rows(), static_cast< std::size_t >( fan.size( 2 ) ) );
  EXPECT_EQ( t.points.cols(), 2u );
}

TEST( Triangulation, Errors )
{
  const GridView cube = structuredGrid( FieldVector{ 0.0, 0.0, 0.0 }, FieldVector{ 1.0, 1.0, 1.0 }, { 2, 2, 2 } );
  EXPECT_THROW( triangulation( cube ), CapabilityError );
  const GridView line = structuredGrid( FieldVector{ 0.0 }, FieldVector{ 1.0 }, { 4 } );
  EXPECT_THROW( triangulation( line ), CapabilityError );
  const GridView fan = conformGrid( fanGridData() );
  EXPECT_THROW( triangulation( fan, -1 ), DomainError );
}

TEST( VTK, WellFormedAndConsistent )
{
  const GridView view = adaptedFan();
  const P1Interpolation p = interpolateP1( view, oscillatingFunction );
  const GridFunction f = gridFunctionFromGlobal( view, oscillatingFunction, 1 );
  const GridFunction vec = gridFunctionFromGlobal( view, [] ( const FieldVector &x ) { return FieldVector{ x[ 0 ], x[ 1 ] }; }, 2 );
  for( int level = 0; level <= 2; ++level )
  {
    const std::string name = ( scratch() / ( "fan" + std::to_string( level ) ) ).string();
    const std::string path = writeVTK( view, name, { { "uh", p.function() }, { "f", f } }, { { "fc", f }, { "x", vec } }, level );
    EXPECT_EQ( path, name + ".vtu" );
    const oracle::VtuFile file = oracle::readVtu( path );
    ASSERT_TRUE( file.wellFormed ) << file.error;
    EXPECT_EQ( file.rootType, "UnstructuredGrid" );

    const Triangulation t = triangulation( view, level );
    EXPECT_EQ( file.numberOfPoints, static_cast< long >( t.points.rows() ) );
    EXPECT_EQ( file.numberOfCells, static_cast< long >( t.triangles.size() ) );
    EXPECT_NEAR( oracle::vtuCellArea( file ), 1.8, 1e-8 );

    const auto *points = file.find( "Points", "" );
    ASSERT_NE( points, nullptr );
    EXPECT_EQ( points->values.size(), 3u * file.numberOfPoints );
    const auto *uh = file.find( "PointData", "uh" );
    ASSERT_NE( uh, nullptr );
    EXPECT_EQ( uh->values.size(), static_cast< std::size_t >( file.numberOfPoints ) );
    const auto *fp = file.find( "PointData", "f" );
    ASSERT_NE( fp, nullptr );
    for( long i = 0; i < file.numberOfPoints; ++i )
    {
      const FieldVector x{ points->values[ 3*i ], points->values[ 3*i+1 ] };
      EXPECT_NEAR( fp->values[ i ], oscillatingFunction( x ), 1e-12 );
    }
    const auto *fc = file.find( "CellData", "fc" );
    ASSERT_NE( fc, nullptr );
    EXPECT_EQ( fc->values.size(), static_cast< std::size_t >( file.numberOfCells ) );
    const auto *x = file.find( "CellData", "x" );
    ASSERT_NE( x, nullptr );
    EXPECT_EQ( x->attributes.at( "NumberOfComponents" ), "2" );
    EXPECT_EQ( x->values.size(), 2u * file.numberOfCells );
  }
}

TEST( VTK, QuadrilateralCells )
{
  const GridView view = structuredGrid( FieldVector{ 0.0, 0.0 }, FieldVector{ 2.0, 0.5 }, { 6, 3 } );
  for( int level = 0; level <= 2; ++level )
  {
    const std::string path = writeVTK( view, ( scratch() / ( "quads" + std::to_string( level ) ) ).string(), {}, {}, level );
    const oracle::VtuFile file = oracle::readVtu( path );
    ASSERT_TRUE( file.wellFormed ) << file.error;
    EXPECT_EQ( file.numberOfCells, 18L << ( 2 * level ) );
    EXPECT_NEAR( oracle::vtuCellArea( file ), 1.0, 1e-8 );
    for( double t : file.find( "Cells", "types" )->values )
      EXPECT_EQ( t, 9.0 );
  }
}

TEST( VTK, Errors )
{
  const GridView view = conformGrid( fanGridData() );
  const GridFunction f = gridFunctionFromGlobal( view, oscillatingFunction, 1 );
  EXPECT_THROW( writeVTK( view, "/nonexistent-directory/gridkit/out", { { "f", f } } ), IoError );
  EXPECT_THROW( writeVTK( view, ( scratch() / "dup" ).string(), { { "f", f } }, { { "f", f } } ), DomainError );
  EXPECT_THROW( writeVTK( view, ( scratch() / "dup" ).string(), { { "f", f }, { "f", f } } ), DomainError );
  EXPECT_THROW( writeVTK( view, ( scratch() / "neg" ).string(), {}, {}, -1 ), DomainError );
}

TEST( GridJSON, RoundTrip )
{
  const SimplexGridData fan = fanGridData();
  const GridDescription d = gridDescriptionFromJSON( parseJSON( toJSON( fan ).dump() ) );
  ASSERT_TRUE( std::holds_alternative< SimplexGridData >( d ) );
  const auto &back = std::get< SimplexGridData >( d );
  ASSERT_EQ( back.vertices.size(), fan.vertices.size() );
  for( std::size_t i = 0; i < fan.vertices.size(); ++i )
    for( int k = 0; k < 2; ++k )
      EXPECT_EQ( back.vertices[ i ][ k ], fan.vertices[ i ][ k ] );
  EXPECT_EQ( back.simplices, fan.simplices );

  const CartesianDomain box = cartesianDomain( FieldVector{ 0.0, -1.0 }, FieldVector{ 0.25, 2.0 }, { 15, 4 } );
  const GridDescription e = gridDescriptionFromJSON( toJSON( box ) );
  ASSERT_TRUE( std::holds_alternative< CartesianDomain >( e ) );
  EXPECT_EQ( std::get< CartesianDomain >( e ).cells, box.cells );
  EXPECT_EQ( std::get< CartesianDomain >( e ).upper[ 1 ], 2.0 );
}

TEST( GridJSON, ReadsFanFile )
{
  const GridDescription d = readGridJSON( std::string( GRIDKIT_TEST_DATA ) + "/fan.json" );
  ASSERT_TRUE( std::holds_alternative< SimplexGridData >( d ) );
  GridView view = conformGrid( std::get< SimplexGridData >( d ) );
  EXPECT_EQ( view.size( 0 ), 6 );
  double volume = 0.0;
  for( const Entity &e : view.elements() )
    volume += e.geometry().volume();
  EXPECT_NEAR( volume, 1.8, 1e-14 );
}

TEST( GridJSON, Errors )
{
  EXPECT_THROW( gridDescriptionFromJSON( parseJSON( R"({"vertices": [[0,0],[1,0]], "simplices": [[0,1]]})" ) ), ShapeError );
  EXPECT_THROW( gridDescriptionFromJSON( parseJSON( R"({"vertices": [[0,0,1]], "simplices": []})" ) ), ShapeError );
  EXPECT_THROW( gridDescriptionFromJSON( parseJSON( R"({"vertices": [[0,0]]})" ) ), ShapeError );
  EXPECT_THROW( gridDescriptionFromJSON( parseJSON( R"([1, 2])" ) ), ShapeError );
  EXPECT_THROW( gridDescriptionFromJSON( parseJSON( R"({"lower": [0], "upper": [1], "cells": [1.5]})" ) ), ShapeError );

  try
  {
    parseJSON( "{\n  \"vertices\": [[0, 0],\n  [1, 0]\n  \"simplices\": []\n}" );
    FAIL() << "expected ParseError";
  }
  catch( const ParseError &e )
  {
    EXPECT_NE( std::string( e.what() ).find( "line 4" ), std::string::npos ) << e.what();
  }

  EXPECT_THROW( readGridJSON( "/nonexistent-directory/grid.json" ), IoError );
  const auto bad = scratch() / "bad.json";
  std::ofstream( bad ) << "{ \"vertices\": ";
  EXPECT_THROW( readGridJSON( bad.string() ), ParseError );
  EXPECT_THROW( readGridJSON( bad.string() ), IoError );
}
