#ifndef GRIDKIT_GRID_GRIDVIEW_HH
#define GRIDKIT_GRID_GRIDVIEW_HH

#include <cmath>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gridkit/common/array2.hh>
#include <gridkit/common/exceptions.hh>
#include <gridkit/grid/entity.hh>
#include <gridkit/grid/hierarchicalgrid.hh>
#include <gridkit/grid/partition.hh>

namespace gridkit
{

  //! all leaf entities of one codimension, in index order
  class EntityRange
  {
  public:
    class iterator
    {
    public:
      using iterator_category = std::forward_iterator_tag;
      using value_type = Entity;
      using difference_type = std::ptrdiff_t;
      using pointer = void;
      using reference = Entity;

      iterator () = default;
      iterator ( const HierarchicalGrid *grid, int codim, int id ) : grid_( grid ), codim_( codim ), id_( id ) {}

      Entity operator* () const { return Entity( *grid_, codim_, id_ ); }
      iterator &operator++ () { ++id_; return *this; }
      iterator operator++ ( int ) { iterator tmp = *this; ++id_; return tmp; }
      friend bool operator== ( const iterator &a, const iterator &b ) { return a.id_ == b.id_; }

    private:
      const HierarchicalGrid *grid_ = nullptr;
      int codim_ = 0;
      int id_ = 0;
    };

    EntityRange ( const HierarchicalGrid &grid, int codim )
      : grid_( &grid ), codim_( codim ), size_( static_cast< int >( grid.leaf().size( codim ) ) )
    {}

    iterator begin () const { return iterator( grid_, codim_, 0 ); }
    iterator end () const { return iterator( grid_, codim_, size_ ); }
    int size () const noexcept { return size_; }
    Entity operator[] ( int i ) const { return Entity( *grid_, codim_, i ); }

  private:
    const HierarchicalGrid *grid_;
    int codim_;
    int size_;
  };



  /** \brief consecutive numbering of the leaf entities of each geometry type */
  class IndexSet
  {
  public:
    explicit IndexSet ( const HierarchicalGrid &grid ) : grid_( &grid ) {}

    bool contains ( const Entity &e ) const noexcept { return e.gridPointer() == grid_; }

    int index ( const Entity &e ) const
    {
      checkEntity( e );
      return grid_->leaf().codims[ e.codim() ].index[ e.id() ];
    }

    //! indices of all codim-c subentities of e, in reference element order
    std::vector< int > subIndices ( const Entity &e, int c ) const
    {
      checkEntity( e );
      const auto &leaf = grid_->leaf();
      if( c < e.codim() || c > leaf.dimension )
        throw DomainError( "subIndices: codim " + std::to_string( c ) + " invalid for an entity of codim " + std::to_string( e.codim() ) );
      if( c == e.codim() )
        return { index( e ) };

      std::span< const int > ids;
      if( e.codim() == 0 )
        ids = leaf.subEntities( e.id(), c );
      else if( c == leaf.dimension )
        ids = e.vertexIds();
      else
        throw CapabilityError( "subIndices: only elements and vertices of lower dimensional entities are available" );

      std::vector< int > result;
      result.reserve( ids.size() );
      for( int id : ids )
        result.push_back( leaf.codims[ c ].index[ id ] );
      return result;
    }

    int subIndex ( const Entity &e, int i, int c ) const
    {
      const auto indices = subIndices( e, c );
      if( i < 0 || i >= static_cast< int >( indices.size() ) )
        throw DomainError( "subIndex: index out of range" );
      return indices[ i ];
    }

    int size ( GeometryType type ) const { return grid_->leaf().sizeByType( type ); }

    int size ( int codim ) const
    {
      if( codim < 0 || codim > grid_->dimension() )
        throw DomainError( "IndexSet::size: codim " + std::to_string( codim ) + " out of range" );
      return static_cast< int >( grid_->leaf().size( codim ) );
    }

    std::vector< GeometryType > types ( int codim ) const
    {
      std::vector< GeometryType > result;
      for( const auto &[ gt, n ] : grid_->leaf().codims.at( codim ).typeCounts )
        result.push_back( gt );
      return result;
    }

  private:
    void checkEntity ( const Entity &e ) const
    {
      if( !contains( e ) )
        throw DomainError( "IndexSet: entity does not belong to this grid" );
      e.check();
    }

    const HierarchicalGrid *grid_;
  };



  /** \brief common facet of an element and its neighbor or the boundary
   *
   *  On the boundary outside() is empty. Normals are computed from the
   *  world geometry of the facet and point away from inside().
   */
  class Intersection
  {
  public:
    Intersection ( Entity inside, std::optional< Entity > outside, int indexInInside, int indexInOutside, AffineGeometry geometry )
      : inside_( std::move( inside ) ), outside_( std::move( outside ) ),
        indexInInside_( indexInInside ), indexInOutside_( indexInOutside ), geometry_( std::move( geometry ) )
    {
      normal_ = computeNormal();
    }

    const Entity &inside () const noexcept { return inside_; }
    const std::optional< Entity > &outside () const noexcept { return outside_; }
    bool boundary () const noexcept { return !outside_.has_value(); }
    bool neighbor () const noexcept { return outside_.has_value(); }
    int indexInInside () const noexcept { return indexInInside_; }
    int indexInOutside () const noexcept { return indexInOutside_; }
    const AffineGeometry &geometry () const noexcept { return geometry_; }
    GeometryType type () const noexcept { return geometry_.type(); }

    const FieldVector &centerUnitOuterNormal () const noexcept { return normal_; }
    FieldVector unitOuterNormal ( const FieldVector & ) const { return normal_; }
    FieldVector integrationOuterNormal ( const FieldVector &x ) const { return normal_ * geometry_.integrationElement( x ); }

    //! facet measure; points count as 1 so fluxes in 1d scale correctly
    double area () const { return geometry_.mydimension() == 0 ? 1.0 : geometry_.volume(); }

  private:
    FieldVector computeNormal () const
    {
      const int dim = geometry_.coorddimension();
      const FieldVector away = geometry_.center() - inside_.geometry().center();
      FieldVector n( dim );
      if( dim == 1 )
        n[ 0 ] = 1.0;
      else
      {
        const FieldMatrix &jt = geometry_.jacobianTransposed( referenceElement( geometry_.type() ).center() );
        if( dim == 2 )
        {
          n[ 0 ] = jt( 0, 1 );
          n[ 1 ] = -jt( 0, 0 );
        }
        else
        {
          n[ 0 ] = jt( 0, 1 ) * jt( 1, 2 ) - jt( 0, 2 ) * jt( 1, 1 );
          n[ 1 ] = jt( 0, 2 ) * jt( 1, 0 ) - jt( 0, 0 ) * jt( 1, 2 );
          n[ 2 ] = jt( 0, 0 ) * jt( 1, 1 ) - jt( 0, 1 ) * jt( 1, 0 );
        }
        n /= n.two_norm();
      }
      if( n.dot( away ) < 0.0 )
        n *= -1.0;
      return n;
    }

    Entity inside_;
    std::optional< Entity > outside_;
    int indexInInside_;
    int indexInOutside_;
    AffineGeometry geometry_;
    FieldVector normal_;
  };



  class PartitionView;

  /** \brief leaf view of a hierarchical grid
   *
   *  The view shares ownership of the grid and always shows its current
   *  leaf; refining through hierarchicalGrid() updates every view in place.
   */
  class GridView
  {
  public:
    GridView () = default;
    explicit GridView ( std::shared_ptr< HierarchicalGrid > grid ) : grid_( std::move( grid ) ) {}

    int dimension () const { return grid().dimension(); }

    int size ( int codim ) const
    {
      checkCodim( codim );
      return static_cast< int >( grid().leaf().size( codim ) );
    }

    int size ( GeometryType type ) const { return grid().leaf().sizeByType( type ); }

    EntityRange entities ( int codim ) const
    {
      checkCodim( codim );
      return EntityRange( grid(), codim );
    }

    EntityRange elements () const { return entities( 0 ); }
    EntityRange facets () const { return entities( 1 ); }
    //! entities of dimension 1
    EntityRange edges () const { return entities( dimension() - 1 ); }
    //! entities of dimension 0
    EntityRange vertices () const { return entities( dimension() ); }

    IndexSet indexSet () const { return IndexSet( grid() ); }

    std::vector< Intersection > intersections ( const Entity &element ) const
    {
      if( element.gridPointer() != grid_.get() )
        throw DomainError( "intersections: entity does not belong to this grid" );
      if( element.codim() != 0 )
        throw DomainError( "intersections: entity must be an element" );
      element.check();

      const auto &leaf = grid().leaf();
      const auto facets = leaf.subEntities( element.id(), 1 );
      std::vector< Intersection > result;
      result.reserve( facets.size() );
      for( std::size_t i = 0; i < facets.size(); ++i )
      {
        const auto &link = leaf.facetLinks[ facets[ i ] ];
        const int self = ( link.element[ 0 ] == element.id() && link.local[ 0 ] == int( i ) ) ? 0 : 1;
        const int other = 1 - self;
        std::optional< Entity > outside;
        if( link.element[ other ] >= 0 )
          outside = Entity( grid(), 0, link.element[ other ] );
        result.emplace_back( element, outside, int( i ), link.local[ other ], Entity( grid(), 1, facets[ i ] ).geometry() );
      }
      return result;
    }

    //! vertex coordinates, one row per vertex in index order
    Array2 coordinates () const
    {
      const auto &leaf = grid().leaf();
      const int dim = leaf.dimension;
      Array2 result( leaf.coordinates.size(), dim );
      const auto &index = leaf.codims[ dim ].index;
      for( std::size_t v = 0; v < leaf.coordinates.size(); ++v )
        for( int k = 0; k < dim; ++k )
          result( index[ v ], k ) = leaf.coordinates[ v ][ k ];
      return result;
    }

    HierarchicalGrid &hierarchicalGrid () const
    {
      if( !grid_ )
        throw StateError( "GridView: no grid attached" );
      return *grid_;
    }

    const std::shared_ptr< HierarchicalGrid > &gridPointer () const noexcept { return grid_; }

    PartitionView partition ( PartitionKind kind ) const;
    PartitionView interiorPartition () const;
    PartitionView interiorBorderPartition () const;
    PartitionView overlapPartition () const;
    PartitionView overlapFrontPartition () const;
    PartitionView allPartition () const;

    friend bool operator== ( const GridView &a, const GridView &b ) noexcept { return a.grid_ == b.grid_; }

  private:
    const HierarchicalGrid &grid () const { return hierarchicalGrid(); }

    void checkCodim ( int codim ) const
    {
      if( codim < 0 || codim > dimension() )
        throw DomainError( "codim " + std::to_string( codim ) + " out of range [0," + std::to_string( dimension() ) + "]" );
    }

    std::shared_ptr< HierarchicalGrid > grid_;
  };



  /** \brief entities of a grid view restricted to a set of partition types
   *
   *  The partition type of each entity comes from a lookup function; an
   *  empty optional means the entity is not known to this view. Without a
   *  lookup every entity is interior (a serial grid).
   */
  class PartitionView
  {
  public:
    using TypeLookup = std::function< std::optional< PartitionType >( int codim, int id ) >;

    PartitionView ( GridView view, PartitionKind kind, TypeLookup lookup = {} )
      : view_( std::move( view ) ), kind_( kind ), lookup_( std::move( lookup ) )
    {}

    const GridView &gridView () const noexcept { return view_; }
    PartitionKind kind () const noexcept { return kind_; }

    std::optional< PartitionType > partitionType ( int codim, int id ) const
    {
      if( lookup_ )
        return lookup_( codim, id );
      return PartitionType::interior;
    }

    bool contains ( const Entity &e ) const
    {
      const auto pt = partitionType( e.codim(), e.id() );
      return pt && gridkit::contains( kind_, *pt );
    }

    std::vector< Entity > entities ( int codim ) const
    {
      const auto range = view_.entities( codim );
      std::vector< Entity > result;
      const auto &grid = view_.hierarchicalGrid();
      for( int id = 0; id < range.size(); ++id )
      {
        const auto pt = partitionType( codim, id );
        if( pt && gridkit::contains( kind_, *pt ) )
          result.emplace_back( grid, codim, id, *pt );
      }
      return result;
    }

    std::vector< Entity > elements () const { return entities( 0 ); }
    std::vector< Entity > facets () const { return entities( 1 ); }
    std::vector< Entity > edges () const { return entities( view_.dimension() - 1 ); }
    std::vector< Entity > vertices () const { return entities( view_.dimension() ); }

  private:
    GridView view_;
    PartitionKind kind_;
    TypeLookup lookup_;
  };

  inline PartitionView GridView::partition ( PartitionKind kind ) const { return PartitionView( *this, kind ); }
  inline PartitionView GridView::interiorPartition () const { return partition( PartitionKind::interior ); }
  inline PartitionView GridView::interiorBorderPartition () const { return partition( PartitionKind::interiorBorder ); }
  inline PartitionView GridView::overlapPartition () const { return partition( PartitionKind::overlap ); }
  inline PartitionView GridView::overlapFrontPartition () const { return partition( PartitionKind::overlapFront ); }
  inline PartitionView GridView::allPartition () const { return partition( PartitionKind::all ); }

} // namespace gridkit

#endif // GRIDKIT_GRID_GRIDVIEW_HH
