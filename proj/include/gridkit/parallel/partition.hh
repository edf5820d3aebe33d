#ifndef GRIDKIT_PARALLEL_PARTITION_HH
#define GRIDKIT_PARALLEL_PARTITION_HH

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/partition.hh>

namespace gridkit
{

  //! owner rank of every leaf element
  struct SimPartition
  {
    int nRanks = 1;
    std::vector< int > elementRank;

    int count ( int rank ) const { return static_cast< int >( std::count( elementRank.begin(), elementRank.end(), rank ) ); }
  };

  /** \brief strips of elements ordered by their center
   *
   *  Elements are sorted by center x, then y, then index, and cut into
   *  nRanks consecutive pieces whose sizes differ by at most one.
   */
  inline SimPartition partitionByCoordinate ( const GridView &view, int nRanks )
  {
    if( nRanks < 1 )
      throw DomainError( "partitionByCoordinate: need at least one rank" );
    const int n = view.size( 0 );
    struct Key
    {
      double x, y;
      int id;
    };
    std::vector< Key > keys;
    keys.reserve( n );
    for( const Entity &e : view.elements() )
    {
      const FieldVector c = e.geometry().center();
      keys.push_back( { c[ 0 ], c.size() > 1 ? c[ 1 ] : 0.0, e.id() } );
    }
    std::sort( keys.begin(), keys.end(), [] ( const Key &a, const Key &b ) {
        if( a.x != b.x ) return a.x < b.x;
        if( a.y != b.y ) return a.y < b.y;
        return a.id < b.id;
      } );

    SimPartition p{ nRanks, std::vector< int >( n, 0 ) };
    const int base = n / nRanks, extra = n % nRanks;
    int pos = 0;
    for( int r = 0; r < nRanks; ++r )
    {
      const int size = base + ( r < extra ? 1 : 0 );
      for( int k = 0; k < size; ++k, ++pos )
        p.elementRank[ keys[ pos ].id ] = r;
    }
    return p;
  }



  /** \brief the part of a grid known to one simulated rank
   *
   *  Owned elements are interior; elements sharing a vertex with an owned
   *  element are ghosts. A lower dimensional entity known to the rank is
   *  interior if all elements around it are owned by the rank, border if
   *  they are owned by several ranks including this one, and ghost if the
   *  rank owns none of them. Overlap and front are never assigned.
   */
  class RankView
  {
  public:
    RankView ( GridView view, int rank, std::vector< std::vector< signed char > > types )
      : view_( std::move( view ) ), rank_( rank ), generation_( view_.hierarchicalGrid().generation() ),
        types_( std::make_shared< const std::vector< std::vector< signed char > > >( std::move( types ) ) )
    {}

    int rank () const noexcept { return rank_; }
    const GridView &gridView () const noexcept { return view_; }

    std::optional< PartitionType > partitionType ( int codim, int id ) const
    {
      check();
      const signed char t = types_->at( codim ).at( id );
      if( t < 0 )
        return std::nullopt;
      return static_cast< PartitionType >( t );
    }

    std::optional< PartitionType > partitionType ( const Entity &e ) const { return partitionType( e.codim(), e.id() ); }

    bool knows ( int codim, int id ) const { return partitionType( codim, id ).has_value(); }

    //! number of entities of a codim with the given partition type
    int count ( int codim, PartitionType type ) const
    {
      check();
      return static_cast< int >( std::count( ( *types_ )[ codim ].begin(), ( *types_ )[ codim ].end(), static_cast< signed char >( type ) ) );
    }

    PartitionView partition ( PartitionKind kind ) const
    {
      auto types = types_;
      const auto *grid = &view_.hierarchicalGrid();
      const auto generation = generation_;
      return PartitionView( view_, kind, [ types, grid, generation ] ( int codim, int id ) -> std::optional< PartitionType > {
          if( grid->generation() != generation )
            throw InvalidationError( "RankView: grid has been modified since the partition was built" );
          const signed char t = ( *types )[ codim ][ id ];
          if( t < 0 )
            return std::nullopt;
          return static_cast< PartitionType >( t );
        } );
    }

    PartitionView interiorPartition () const { return partition( PartitionKind::interior ); }
    PartitionView interiorBorderPartition () const { return partition( PartitionKind::interiorBorder ); }
    PartitionView overlapPartition () const { return partition( PartitionKind::overlap ); }
    PartitionView overlapFrontPartition () const { return partition( PartitionKind::overlapFront ); }
    PartitionView allPartition () const { return partition( PartitionKind::all ); }

  private:
    void check () const
    {
      if( view_.hierarchicalGrid().generation() != generation_ )
        throw InvalidationError( "RankView: grid has been modified since the partition was built" );
    }

    GridView view_;
    int rank_;
    std::uint64_t generation_;
    std::shared_ptr< const std::vector< std::vector< signed char > > > types_;
  };

  inline std::vector< RankView > buildRankViews ( const GridView &view, const SimPartition &p )
  {
    const auto &leaf = view.hierarchicalGrid().leaf();
    const int dim = leaf.dimension;
    const int numElements = static_cast< int >( leaf.size( 0 ) );
    if( static_cast< int >( p.elementRank.size() ) != numElements )
      throw DomainError( "buildRankViews: partition does not match the grid" );

    // elements around each entity
    std::vector< std::vector< std::vector< int > > > around( dim+1 );
    for( int c = 1; c <= dim; ++c )
    {
      around[ c ].resize( leaf.size( c ) );
      for( int e = 0; e < numElements; ++e )
        for( int id : leaf.subEntities( e, c ) )
          around[ c ][ id ].push_back( e );
    }

    std::vector< RankView > views;
    for( int r = 0; r < p.nRanks; ++r )
    {
      std::vector< std::vector< signed char > > types( dim+1 );
      auto &elementType = types[ 0 ];
      elementType.assign( numElements, -1 );
      for( int e = 0; e < numElements; ++e )
        if( p.elementRank[ e ] == r )
        {
          elementType[ e ] = static_cast< signed char >( PartitionType::interior );
          for( int v : leaf.subEntities( e, dim ) )
            for( int nb : around[ dim ][ v ] )
              if( p.elementRank[ nb ] != r )
                elementType[ nb ] = static_cast< signed char >( PartitionType::ghost );
        }

      for( int c = 1; c <= dim; ++c )
      {
        types[ c ].assign( leaf.size( c ), -1 );
        for( std::size_t id = 0; id < leaf.size( c ); ++id )
        {
          bool known = false, owned = false, foreign = false;
          for( int e : around[ c ][ id ] )
          {
            known = known || elementType[ e ] >= 0;
            if( p.elementRank[ e ] == r )
              owned = true;
            else
              foreign = true;
          }
          if( !known )
            continue;
          const PartitionType t = !owned ? PartitionType::ghost : ( foreign ? PartitionType::border : PartitionType::interior );
          types[ c ][ id ] = static_cast< signed char >( t );
        }
      }
      views.emplace_back( view, r, std::move( types ) );
    }
    return views;
  }

} // namespace gridkit

#endif // GRIDKIT_PARALLEL_PARTITION_HH
