#ifndef GRIDKIT_REGISTRY_GRIDREGISTRY_HH
#define GRIDKIT_REGISTRY_GRIDREGISTRY_HH

#include <string>
#include <variant>

#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/grid/structured.hh>
#include <gridkit/io/gridjson.hh>
#include <gridkit/registry/registry.hh>

namespace gridkit
{

  /** \brief registry with the grid implementations of this library
   *
   *  "structuredGrid" takes {lower, upper, cells}; "conformGrid" (bisection)
   *  and "simplexGrid" (quartering) take {vertices, simplices}.
   */
  inline Registry< GridView > makeGridRegistry ()
  {
    Registry< GridView > registry;

    auto cartesianData = [] ( const nlohmann::json &p ) {
      auto d = gridDescriptionFromJSON( p );
      if( !std::holds_alternative< CartesianDomain >( d ) )
        throw ShapeError( "structured grid: expected lower, upper and cells" );
      return std::get< CartesianDomain >( std::move( d ) );
    };

    registry.registerFactory( "structuredGrid",
      [ cartesianData ] ( const nlohmann::json &p ) {
        const long long dim = cartesianData( p ).dimension();
        return generateTypeName( "gridkit::StructuredGrid", { dim }, { "gridkit/grid/structured.hh" } );
      },
      [ cartesianData ] ( const nlohmann::json &p ) { return structuredGrid( cartesianData( p ) ); } );

    auto simplexData = [] ( const nlohmann::json &p ) {
      auto d = gridDescriptionFromJSON( p );
      if( !std::holds_alternative< SimplexGridData >( d ) )
        throw ShapeError( "simplex grid: expected vertices and simplices" );
      return std::get< SimplexGridData >( std::move( d ) );
    };

    registry.registerFactory( "conformGrid",
      [] ( const nlohmann::json & ) {
        return generateTypeName( "gridkit::BisectionGrid", { 2LL }, { "gridkit/grid/simplexgrid.hh" } );
      },
      [ simplexData ] ( const nlohmann::json &p ) { return conformGrid( simplexData( p ) ); } );

    registry.registerFactory( "simplexGrid",
      [] ( const nlohmann::json & ) {
        return generateTypeName( "gridkit::QuarteringGrid", { 2LL }, { "gridkit/grid/simplexgrid.hh" } );
      },
      [ simplexData ] ( const nlohmann::json &p ) { return simplexGrid( simplexData( p ) ); } );

    return registry;
  }

} // namespace gridkit

#endif // GRIDKIT_REGISTRY_GRIDREGISTRY_HH
