#ifndef GRIDKIT_GRID_HIERARCHICALGRID_HH
#define GRIDKIT_GRID_HIERARCHICALGRID_HH

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/geometry/affinegeometry.hh>
#include <gridkit/grid/leaftopology.hh>

namespace gridkit
{

  enum class Marker { keep, refine };

  class Entity;

  /** \brief base class of all refinable grids
   *
   *  A grid owns its current leaf topology. Every modification replaces the
   *  leaf and bumps generation(), which invalidates all entity handles taken
   *  before.
   */
  class HierarchicalGrid
  {
  public:
    using MarkFunction = std::function< Marker( const Entity & ) >;

    HierarchicalGrid () = default;
    HierarchicalGrid ( const HierarchicalGrid & ) = delete;
    HierarchicalGrid &operator= ( const HierarchicalGrid & ) = delete;
    virtual ~HierarchicalGrid () = default;

    //! implementation tag: "structured", "bisection" or "quartering"
    virtual std::string implementation () const = 0;

    virtual void globalRefine ( int n = 1 ) = 0;

    virtual void adapt ( const MarkFunction & )
    {
      throw CapabilityError( "adapt: local refinement not supported by the " + implementation() + " grid" );
    }

    virtual int maxLevel () const = 0;

    int dimension () const noexcept { return leaf_.dimension; }
    std::uint64_t generation () const noexcept { return generation_; }
    const LeafTopology &leaf () const noexcept { return leaf_; }

    const AffineGeometry &elementGeometry ( int element ) const { return elementGeometries_.at( element ); }

  protected:
    void setLeaf ( LeafElements elements )
    {
      LeafTopology leaf = buildLeafTopology( std::move( elements ) );
      std::vector< AffineGeometry > geometries;
      geometries.reserve( leaf.size( 0 ) );
      for( std::size_t e = 0; e < leaf.size( 0 ); ++e )
      {
        std::vector< FieldVector > corners;
        for( int v : leaf.codims[ 0 ].cornersOf( e ) )
          corners.push_back( leaf.coordinates[ v ] );
        geometries.emplace_back( leaf.codims[ 0 ].type[ e ], std::move( corners ) );
      }
      leaf_ = std::move( leaf );
      elementGeometries_ = std::move( geometries );
      ++generation_;
    }

  private:
    LeafTopology leaf_;
    std::vector< AffineGeometry > elementGeometries_;
    std::uint64_t generation_ = 0;
  };

} // namespace gridkit

#endif // GRIDKIT_GRID_HIERARCHICALGRID_HH
