#ifndef GRIDKIT_GRID_LEAFTOPOLOGY_HH
#define GRIDKIT_GRID_LEAFTOPOLOGY_HH

#include <algorithm>
#include <array>
#include <limits>
#include <span>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/geometry/referenceelement.hh>
#include <gridkit/geometry/type.hh>

namespace gridkit
{

  //! element list handed from a grid implementation to the leaf builder
  struct LeafElements
  {
    int dimension = 0;
    std::vector< FieldVector > coordinates;
    std::vector< GeometryType > types;
    std::vector< int > cornerOffsets{ 0 };
    std::vector< int > corners;
    std::vector< int > levels;

    void add ( GeometryType type, std::span< const int > vertexIds, int level )
    {
      types.push_back( type );
      corners.insert( corners.end(), vertexIds.begin(), vertexIds.end() );
      cornerOffsets.push_back( static_cast< int >( corners.size() ) );
      levels.push_back( level );
    }
  };



  /** \brief complete leaf topology: all entities of all codimensions
   *
   *  Entities are addressed by (codim, id); ids run over [0, size(codim)).
   *  Elements keep the order supplied by the grid, vertices keep their
   *  coordinate index, and intermediate codimensions are ordered by their
   *  sorted vertex-id tuple. Corners of intermediate entities are stored in
   *  ascending vertex-id order.
   */
  struct LeafTopology
  {
    struct CodimData
    {
      std::vector< GeometryType > type;
      std::vector< int > cornerOffsets{ 0 };
      std::vector< int > corners;
      std::vector< int > index;                         // index within geometry type
      std::vector< int > level;
      std::vector< std::pair< GeometryType, int > > typeCounts;

      std::size_t size () const noexcept { return type.size(); }
      std::span< const int > cornersOf ( int id ) const
      {
        return { corners.data() + cornerOffsets[ id ], std::size_t( cornerOffsets[ id+1 ] - cornerOffsets[ id ] ) };
      }
    };

    //! element neighbors across one facet
    struct FacetLink
    {
      std::array< int, 2 > element{ -1, -1 };
      std::array< int, 2 > local{ -1, -1 };
    };

    int dimension = 0;
    std::vector< FieldVector > coordinates;
    std::vector< CodimData > codims;
    std::vector< int > levels;

    // element -> subentity ids, per codim
    std::vector< std::vector< int > > subOffsets;
    std::vector< std::vector< int > > subIds;

    std::vector< FacetLink > facetLinks;

    std::span< const int > subEntities ( int element, int codim ) const
    {
      const auto &off = subOffsets[ codim ];
      return { subIds[ codim ].data() + off[ element ], std::size_t( off[ element+1 ] - off[ element ] ) };
    }

    std::size_t size ( int codim ) const { return codims[ codim ].size(); }

    int sizeByType ( GeometryType type ) const
    {
      const int codim = dimension - type.dim();
      if( codim < 0 || codim > dimension )
        return 0;
      for( const auto &[ gt, n ] : codims[ codim ].typeCounts )
        if( gt == type )
          return n;
      return 0;
    }
  };



  namespace Impl
  {

    inline void assignTypeIndices ( LeafTopology::CodimData &data )
    {
      data.index.assign( data.type.size(), 0 );
      std::vector< std::pair< GeometryType, int > > counts;
      for( std::size_t id = 0; id < data.type.size(); ++id )
      {
        auto it = std::find_if( counts.begin(), counts.end(), [ & ] ( const auto &p ) { return p.first == data.type[ id ]; } );
        if( it == counts.end() )
          it = counts.insert( counts.end(), { data.type[ id ], 0 } );
        data.index[ id ] = it->second++;
      }
      std::sort( counts.begin(), counts.end() );
      data.typeCounts = std::move( counts );
    }

  } // namespace Impl



  inline LeafTopology buildLeafTopology ( LeafElements input )
  {
    LeafTopology leaf;
    const int dim = input.dimension;
    leaf.dimension = dim;
    leaf.coordinates = std::move( input.coordinates );
    leaf.levels = std::move( input.levels );
    leaf.codims.resize( dim+1 );
    leaf.subOffsets.assign( dim+1, std::vector< int >{ 0 } );
    leaf.subIds.resize( dim+1 );

    const int numElements = static_cast< int >( input.types.size() );
    const int numVertices = static_cast< int >( leaf.coordinates.size() );

    // codim 0: elements as given
    {
      auto &data = leaf.codims[ 0 ];
      data.type = input.types;
      data.cornerOffsets = input.cornerOffsets;
      data.corners = input.corners;
      Impl::assignTypeIndices( data );
      for( int e = 0; e < numElements; ++e )
      {
        leaf.subIds[ 0 ].push_back( e );
        leaf.subOffsets[ 0 ].push_back( e+1 );
      }
    }

    auto elementCorners = [ & ] ( int e ) {
      return std::span< const int >( input.corners.data() + input.cornerOffsets[ e ],
                                     std::size_t( input.cornerOffsets[ e+1 ] - input.cornerOffsets[ e ] ) );
    };

    // intermediate codimensions: identify subentities by sorted vertex tuple
    for( int codim = 1; codim < dim; ++codim )
    {
      struct Record
      {
        std::array< int, 4 > key;
        GeometryType type;
        int element;
        int local;
      };
      std::vector< Record > records;
      for( int e = 0; e < numElements; ++e )
      {
        const auto &ref = referenceElement( input.types[ e ] );
        const auto corners = elementCorners( e );
        for( int i = 0; i < ref.size( codim ); ++i )
        {
          Record r{ { -1, -1, -1, -1 }, ref.type( i, codim ), e, i };
          const auto &sub = ref.subEntityCorners( i, codim );
          for( std::size_t k = 0; k < sub.size(); ++k )
            r.key[ k ] = corners[ sub[ k ] ];
          std::sort( r.key.begin(), r.key.begin() + sub.size() );
          records.push_back( r );
        }
      }
      std::sort( records.begin(), records.end(), [] ( const Record &a, const Record &b ) {
          return a.key != b.key ? a.key < b.key : ( a.element != b.element ? a.element < b.element : a.local < b.local );
        } );

      auto &data = leaf.codims[ codim ];
      std::vector< std::vector< int > > perElement( numElements );
      for( int e = 0; e < numElements; ++e )
        perElement[ e ].assign( referenceElement( input.types[ e ] ).size( codim ), -1 );

      int id = -1;
      const std::array< int, 4 > *lastKey = nullptr;
      for( const auto &r : records )
      {
        if( !lastKey || *lastKey != r.key )
        {
          ++id;
          data.type.push_back( r.type );
          for( int v : r.key )
            if( v >= 0 )
              data.corners.push_back( v );
          data.cornerOffsets.push_back( static_cast< int >( data.corners.size() ) );
          if( codim == 1 )
            leaf.facetLinks.emplace_back();
          lastKey = &r.key;
        }
        perElement[ r.element ][ r.local ] = id;
        if( codim == 1 )
        {
          auto &link = leaf.facetLinks[ id ];
          const int slot = link.element[ 0 ] < 0 ? 0 : 1;
          if( link.element[ 1 ] >= 0 )
            throw ConstructionError( "grid is not conforming: facet shared by more than two elements" );
          link.element[ slot ] = r.element;
          link.local[ slot ] = r.local;
        }
      }
      Impl::assignTypeIndices( data );
      for( int e = 0; e < numElements; ++e )
      {
        leaf.subIds[ codim ].insert( leaf.subIds[ codim ].end(), perElement[ e ].begin(), perElement[ e ].end() );
        leaf.subOffsets[ codim ].push_back( static_cast< int >( leaf.subIds[ codim ].size() ) );
      }
    }

    // vertices
    if( dim > 0 )
    {
      auto &data = leaf.codims[ dim ];
      data.type.assign( numVertices, vertex );
      for( int v = 0; v < numVertices; ++v )
      {
        data.corners.push_back( v );
        data.cornerOffsets.push_back( v+1 );
      }
      Impl::assignTypeIndices( data );
      for( int e = 0; e < numElements; ++e )
      {
        const auto corners = elementCorners( e );
        leaf.subIds[ dim ].insert( leaf.subIds[ dim ].end(), corners.begin(), corners.end() );
        leaf.subOffsets[ dim ].push_back( static_cast< int >( leaf.subIds[ dim ].size() ) );
      }

      // in 1d the facets are the vertices
      if( dim == 1 )
      {
        leaf.facetLinks.assign( numVertices, {} );
        for( int e = 0; e < numElements; ++e )
        {
          const auto corners = elementCorners( e );
          for( int i = 0; i < 2; ++i )
          {
            auto &link = leaf.facetLinks[ corners[ i ] ];
            const int slot = link.element[ 0 ] < 0 ? 0 : 1;
            if( link.element[ 1 ] >= 0 )
              throw ConstructionError( "grid is not conforming: vertex shared by more than two intervals" );
            link.element[ slot ] = e;
            link.local[ slot ] = i;
          }
        }
      }
    }

    // level of a subentity: coarsest containing element
    leaf.codims[ 0 ].level = leaf.levels;
    for( int codim = 1; codim <= dim; ++codim )
    {
      auto &level = leaf.codims[ codim ].level;
      level.assign( leaf.codims[ codim ].size(), std::numeric_limits< int >::max() );
      for( int e = 0; e < numElements; ++e )
        for( int id : leaf.subEntities( e, codim ) )
          level[ id ] = std::min( level[ id ], leaf.levels[ e ] );
      for( int &l : level )
        if( l == std::numeric_limits< int >::max() )
          l = 0;
    }

    return leaf;
  }

} // namespace gridkit

#endif // GRIDKIT_GRID_LEAFTOPOLOGY_HH
