#ifndef GRIDKIT_PARALLEL_MINRANK_HH
#define GRIDKIT_PARALLEL_MINRANK_HH

#include <algorithm>
#include <ostream>
#include <vector>

#include <gridkit/mapper/mcmgmapper.hh>
#include <gridkit/parallel/communicate.hh>
#include <gridkit/parallel/partition.hh>

namespace gridkit
{

  /** \brief every vertex learns the smallest rank owning an element around it
   *
   *  Each rank stores its own rank on interior and border vertices and
   *  nRanks on ghost vertices, then a min exchange from interiorBorder to
   *  all is performed.
   */
  struct MinRankDemo
  {
    SimPartition partition;
    std::vector< RankView > ranks;
    MCMGMapper mapper;
    DistributedArray values;

    MinRankDemo ( const GridView &view, int nRanks )
      : partition( partitionByCoordinate( view, nRanks ) ),
        ranks( buildRankViews( view, partition ) ),
        mapper( view, Layout::perType( { { gridkit::vertex, 1 } } ) )
    {
      values.assign( nRanks, std::vector< double >( mapper.size(), 0.0 ) );
      for( int r = 0; r < nRanks; ++r )
        for( const Entity &v : ranks[ r ].allPartition().vertices() )
          values[ r ][ mapper.index( v ) ] = v.partitionType() == PartitionType::ghost ? nRanks : r;
      communicate( ranks, mapper, PartitionKind::interiorBorder, PartitionKind::all, CommOp::min(), values );
    }

    //! number of (rank, vertex) copies holding a wrong value
    int violations () const
    {
      const GridView &view = mapper.gridView();
      std::vector< int > owner( view.size( view.dimension() ), partition.nRanks );
      const auto &leaf = view.hierarchicalGrid().leaf();
      for( std::size_t e = 0; e < leaf.size( 0 ); ++e )
        for( int w : leaf.subEntities( e, leaf.dimension ) )
          owner[ w ] = std::min( owner[ w ], partition.elementRank[ e ] );
      int bad = 0;
      for( const auto &rank : ranks )
        for( const Entity &v : rank.allPartition().vertices() )
          if( values[ rank.rank() ][ mapper.index( v ) ] != owner[ v.id() ] )
            ++bad;
      return bad;
    }

    //! vertices known to at least two ranks
    int sharedVertices () const
    {
      const GridView &view = mapper.gridView();
      int shared = 0;
      for( const Entity &v : view.vertices() )
      {
        int holders = 0;
        for( const auto &rank : ranks )
          holders += rank.knows( v.codim(), v.id() ) ? 1 : 0;
        shared += holders >= 2 ? 1 : 0;
      }
      return shared;
    }

    //! CSV lines vertexGlobalIndex,rank,value for every vertex copy
    void writeCSV ( std::ostream &out ) const
    {
      out << "vertexGlobalIndex,rank,value\n";
      for( const auto &rank : ranks )
        for( const Entity &v : rank.allPartition().vertices() )
        {
          const auto i = mapper.index( v );
          out << i << "," << rank.rank() << "," << values[ rank.rank() ][ i ] << "\n";
        }
    }
  };

} // namespace gridkit

#endif // GRIDKIT_PARALLEL_MINRANK_HH
