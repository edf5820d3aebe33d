#ifndef GRIDKIT_PARALLEL_COMMUNICATE_HH
#define GRIDKIT_PARALLEL_COMMUNICATE_HH

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/grid/partition.hh>
#include <gridkit/mapper/mcmgmapper.hh>
#include <gridkit/parallel/partition.hh>

namespace gridkit
{

  //! one array per rank, each indexed by the (global) mapper
  using DistributedArray = std::vector< std::vector< double > >;

  //! reduction applied on the receiving side: op(local, remote)
  struct CommOp
  {
    std::string name;
    std::function< double( double, double ) > reduce;

    static CommOp set () { return { "set", [] ( double, double remote ) { return remote; } }; }
    static CommOp add () { return { "add", [] ( double local, double remote ) { return local + remote; } }; }
    static CommOp min () { return { "min", [] ( double local, double remote ) { return std::min( local, remote ); } }; }
    static CommOp max () { return { "max", [] ( double local, double remote ) { return std::max( local, remote ); } }; }
    static CommOp custom ( std::string name, std::function< double( double, double ) > f ) { return { std::move( name ), std::move( f ) }; }

    static CommOp fromName ( const std::string &name )
    {
      if( name == "set" ) return set();
      if( name == "add" ) return add();
      if( name == "min" ) return min();
      if( name == "max" ) return max();
      throw DomainError( "unknown communication operation '" + name + "'" );
    }
  };

  namespace Impl
  {

    inline void checkPartitionPair ( PartitionKind from, PartitionKind to )
    {
      if( from == PartitionKind::interior || to == PartitionKind::interior )
        throw IllegalPartitionError( "communicate: the interior partition can neither send nor receive" );
      auto isOverlap = [] ( PartitionKind k ) { return k == PartitionKind::overlap || k == PartitionKind::overlapFront; };
      if( ( from == PartitionKind::interiorBorder && isOverlap( to ) ) || ( to == PartitionKind::interiorBorder && isOverlap( from ) ) )
        throw IllegalPartitionError( "communicate: interiorBorder cannot be combined with " + name( from == PartitionKind::interiorBorder ? to : from ) );
    }

    struct Exchange
    {
      int sender;
      int receiver;
      std::int64_t first;
      int count;
    };

    /** \brief all (sender, receiver, block) triples
     *
     *  Sorted by the position of the sender in \p senderOrder, then by the
     *  block's first index.
     */
    inline std::vector< Exchange > exchanges ( const std::vector< RankView > &ranks, const MCMGMapper &mapper,
                                               PartitionKind from, PartitionKind to, const std::vector< int > &senderOrder )
    {
      const GridView &view = mapper.gridView();
      const int dim = view.dimension();
      const int n = static_cast< int >( ranks.size() );
      std::vector< int > position( n );
      for( int k = 0; k < n; ++k )
        position.at( senderOrder.at( k ) ) = k;

      std::vector< Exchange > result;
      for( int c = 0; c <= dim; ++c )
        for( const Entity &e : view.entities( c ) )
        {
          const int count = mapper.blockSize( e.type() );
          if( count == 0 )
            continue;
          std::vector< int > senders, receivers;
          for( int r = 0; r < n; ++r )
          {
            const auto pt = ranks[ r ].partitionType( c, e.id() );
            if( !pt )
              continue;
            if( contains( from, *pt ) )
              senders.push_back( r );
            if( contains( to, *pt ) )
              receivers.push_back( r );
          }
          const std::int64_t first = mapper.index( e );
          for( int s : senders )
            for( int r : receivers )
              if( s != r )
                result.push_back( { s, r, first, count } );
        }
      std::stable_sort( result.begin(), result.end(), [ &position ] ( const Exchange &a, const Exchange &b ) {
          if( a.sender != b.sender )
            return position[ a.sender ] < position[ b.sender ];
          return a.first < b.first;
        } );
      return result;
    }

    inline void apply ( const std::vector< Exchange > &list, const CommOp &op, DistributedArray &data )
    {
      // gather everything first so that no sender sees values received in this round
      std::vector< double > sent;
      for( const auto &x : list )
        for( int k = 0; k < x.count; ++k )
          sent.push_back( data[ x.sender ][ x.first + k ] );
      std::size_t pos = 0;
      for( const auto &x : list )
        for( int k = 0; k < x.count; ++k, ++pos )
        {
          double &local = data[ x.receiver ][ x.first + k ];
          local = op.reduce( local, sent[ pos ] );
        }
    }

    inline void checkData ( const std::vector< RankView > &ranks, const MCMGMapper &mapper, const DistributedArray &data )
    {
      if( data.size() != ranks.size() )
        throw ShapeError( "communicate: expected one array per rank" );
      for( const auto &d : data )
        if( static_cast< std::int64_t >( d.size() ) != mapper.size() )
          throw ShapeError( "communicate: array length " + std::to_string( d.size() ) + " does not match mapper size "
                            + std::to_string( mapper.size() ) );
    }

  } // namespace Impl

  /** \brief simulated exchange of mapper-indexed data between ranks
   *
   *  For every entity that is of a `from` type on rank A and of a `to` type
   *  on rank B != A, B's block becomes op(B's value, A's value). Exchanges
   *  are applied in ascending (sender, index) order, with sender values
   *  taken before the round; with op set the highest sender wins.
   *  \p senderOrder permutes the sender ranks.
   */
  inline void communicate ( const std::vector< RankView > &ranks, const MCMGMapper &mapper,
                            PartitionKind from, PartitionKind to, const CommOp &op,
                            const std::vector< int > &senderOrder, std::vector< DistributedArray * > data )
  {
    Impl::checkPartitionPair( from, to );
    if( ranks.empty() )
      throw DomainError( "communicate: no ranks" );
    for( const auto &r : ranks )
      if( !( r.gridView() == mapper.gridView() ) )
        throw DomainError( "communicate: rank views and mapper belong to different grids" );
    for( auto *d : data )
      Impl::checkData( ranks, mapper, *d );
    std::vector< int > order = senderOrder;
    if( order.empty() )
    {
      order.resize( ranks.size() );
      std::iota( order.begin(), order.end(), 0 );
    }
    const auto list = Impl::exchanges( ranks, mapper, from, to, order );
    for( auto *d : data )
      Impl::apply( list, op, *d );
  }

  template< class... Arrays >
  void communicate ( const std::vector< RankView > &ranks, const MCMGMapper &mapper,
                     PartitionKind from, PartitionKind to, const CommOp &op, DistributedArray &first, Arrays &... more )
  {
    communicate( ranks, mapper, from, to, op, {}, std::vector< DistributedArray * >{ &first, &more... } );
  }

  template< class... Arrays >
  void communicateSet ( const std::vector< RankView > &ranks, const MCMGMapper &mapper,
                        PartitionKind from, PartitionKind to, DistributedArray &first, Arrays &... more )
  {
    communicate( ranks, mapper, from, to, CommOp::set(), first, more... );
  }

  template< class... Arrays >
  void communicateAdd ( const std::vector< RankView > &ranks, const MCMGMapper &mapper,
                        PartitionKind from, PartitionKind to, DistributedArray &first, Arrays &... more )
  {
    communicate( ranks, mapper, from, to, CommOp::add(), first, more... );
  }

} // namespace gridkit

#endif // GRIDKIT_PARALLEL_COMMUNICATE_HH
