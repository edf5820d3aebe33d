#ifndef GRIDKIT_GRID_ENTITY_HH
#define GRIDKIT_GRID_ENTITY_HH

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/geometry/affinegeometry.hh>
#include <gridkit/geometry/referenceelement.hh>
#include <gridkit/grid/hierarchicalgrid.hh>
#include <gridkit/grid/partition.hh>

namespace gridkit
{

  /** \brief value handle of a leaf entity
   *
   *  Stores the grid, the grid generation at creation, the codimension and
   *  the entity's id within its codimension. Every query checks the
   *  generation and throws InvalidationError once the grid was refined.
   */
  class Entity
  {
  public:
    Entity () = default;

    Entity ( const HierarchicalGrid &grid, int codim, int id, PartitionType partition = PartitionType::interior )
      : grid_( &grid ), generation_( grid.generation() ), codim_( codim ), id_( id ), partition_( partition )
    {}

    const HierarchicalGrid &grid () const { check(); return *grid_; }
    const HierarchicalGrid *gridPointer () const noexcept { return grid_; }
    std::uint64_t generation () const noexcept { return generation_; }

    //! true while the grid has not been modified since the handle was taken
    bool valid () const noexcept { return grid_ && grid_->generation() == generation_; }

    int codim () const noexcept { return codim_; }
    int mydimension () const { return grid().dimension() - codim_; }

    //! position in the leaf enumeration of this codimension
    int id () const noexcept { return id_; }

    GeometryType type () const { return data().type[ id_ ]; }
    int level () const { return data().level[ id_ ]; }
    PartitionType partitionType () const noexcept { return partition_; }

    const ReferenceElement &referenceElement () const { return gridkit::referenceElement( type() ); }

    AffineGeometry geometry () const
    {
      if( codim_ == 0 )
        return grid().elementGeometry( id_ );
      std::vector< FieldVector > corners;
      for( int v : vertexIds() )
        corners.push_back( grid_->leaf().coordinates[ v ] );
      return AffineGeometry( type(), std::move( corners ) );
    }

    //! leaf vertex numbers of the corners, in geometry corner order
    std::span< const int > vertexIds () const { return data().cornersOf( id_ ); }

    int subEntities ( int c ) const
    {
      checkSubCodim( c );
      return referenceElement().size( c - codim_ );
    }

    //! i-th subentity of codimension c in reference element order
    Entity subEntity ( int i, int c ) const
    {
      checkSubCodim( c );
      if( i < 0 || i >= referenceElement().size( c - codim_ ) )
        throw DomainError( "subEntity: index " + std::to_string( i ) + " out of range for codim " + std::to_string( c ) );
      if( c == codim_ )
        return *this;
      const auto &leaf = grid_->leaf();
      if( codim_ == 0 )
        return Entity( *grid_, c, leaf.subEntities( id_, c )[ i ] );
      if( c == leaf.dimension )
        return Entity( *grid_, c, vertexIds()[ i ] );
      throw CapabilityError( "subEntity: only elements and vertices of lower dimensional entities are available" );
    }

    friend bool operator== ( const Entity &a, const Entity &b ) noexcept
    {
      return a.grid_ == b.grid_ && a.generation_ == b.generation_ && a.codim_ == b.codim_ && a.id_ == b.id_;
    }

    void check () const
    {
      if( !grid_ )
        throw StateError( "Entity: default constructed handle" );
      if( grid_->generation() != generation_ )
        throw InvalidationError( "Entity: grid has been modified since this entity was obtained" );
    }

  private:
    const LeafTopology::CodimData &data () const
    {
      check();
      return grid_->leaf().codims[ codim_ ];
    }

    void checkSubCodim ( int c ) const
    {
      check();
      if( c < codim_ || c > grid_->dimension() )
        throw DomainError( "subEntity: codim " + std::to_string( c ) + " out of range" );
    }

    const HierarchicalGrid *grid_ = nullptr;
    std::uint64_t generation_ = 0;
    int codim_ = 0;
    int id_ = -1;
    PartitionType partition_ = PartitionType::interior;
  };

} // namespace gridkit

#endif // GRIDKIT_GRID_ENTITY_HH
