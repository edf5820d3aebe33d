#ifndef GRIDKIT_GRID_SIMPLEXGRID_HH
#define GRIDKIT_GRID_SIMPLEXGRID_HH

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/grid/entity.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/hierarchicalgrid.hh>

namespace gridkit
{

  //! vertex coordinates and triangles given as vertex numbers
  struct SimplexGridData
  {
    std::vector< FieldVector > vertices;
    std::vector< std::array< int, 3 > > simplices;
  };

  /** \brief two triangles per cell of a nx x ny Cartesian subdivision
   *
   *  Each cell (v00, v10, v01, v11) is cut along the diagonal v00-v11.
   */
  inline SimplexGridData cartesianTriangulation ( const FieldVector &lower, const FieldVector &upper, int nx, int ny )
  {
    if( nx < 1 || ny < 1 )
      throw DomainError( "cartesianTriangulation: need at least one cell per direction" );
    SimplexGridData data;
    for( int j = 0; j <= ny; ++j )
      for( int i = 0; i <= nx; ++i )
        data.vertices.push_back( FieldVector{ lower[ 0 ] + ( upper[ 0 ] - lower[ 0 ] ) * i / nx,
                                              lower[ 1 ] + ( upper[ 1 ] - lower[ 1 ] ) * j / ny } );
    for( int j = 0; j < ny; ++j )
      for( int i = 0; i < nx; ++i )
      {
        const int v00 = j*( nx+1 ) + i, v10 = v00 + 1, v01 = v00 + nx + 1, v11 = v01 + 1;
        data.simplices.push_back( { v00, v10, v11 } );
        data.simplices.push_back( { v00, v11, v01 } );
      }
    return data;
  }



  namespace Impl
  {

    inline double signedArea2 ( const FieldVector &a, const FieldVector &b, const FieldVector &c )
    {
      return ( b[ 0 ] - a[ 0 ] ) * ( c[ 1 ] - a[ 1 ] ) - ( b[ 1 ] - a[ 1 ] ) * ( c[ 0 ] - a[ 0 ] );
    }

    inline std::pair< int, int > edgeKey ( int a, int b ) { return a < b ? std::pair( a, b ) : std::pair( b, a ); }

    //! local edge numbers of a triangle: {0,1}, {0,2}, {1,2}
    inline constexpr std::array< std::array< int, 2 >, 3 > triangleEdges{ { { 0, 1 }, { 0, 2 }, { 1, 2 } } };



    /** \brief refinement forest over a conforming macro triangulation
     *
     *  Macro triangles are checked and reoriented so that all triangles have
     *  the same (clockwise) orientation. Edge midpoints are shared through a
     *  map keyed by the sorted vertex pair, so new vertices are appended in
     *  creation order.
     */
    class TriangleForest : public HierarchicalGrid
    {
    protected:
      struct Node
      {
        std::array< int, 3 > vertices;
        int refinementEdge = 2;
        int level = 0;
        int firstChild = -1;
        int numChildren = 0;
      };

      explicit TriangleForest ( const SimplexGridData &data )
        : coordinates_( data.vertices )
      {
        const int n = static_cast< int >( coordinates_.size() );
        for( int v = 0; v < n; ++v )
          if( coordinates_[ v ].size() != 2 )
            throw ConstructionError( "simplex grid: vertex " + std::to_string( v ) + " does not have 2 coordinates" );
        if( data.simplices.empty() )
          throw ConstructionError( "simplex grid: no simplices given" );

        for( std::size_t s = 0; s < data.simplices.size(); ++s )
        {
          auto t = data.simplices[ s ];
          for( int v : t )
            if( v < 0 || v >= n )
              throw ConstructionError( "simplex grid: simplex " + std::to_string( s ) + " references vertex "
                                       + std::to_string( v ) + " of " + std::to_string( n ) );
          const FieldVector &a = coordinates_[ t[ 0 ] ], &b = coordinates_[ t[ 1 ] ], &c = coordinates_[ t[ 2 ] ];
          const double det = signedArea2( a, b, c );
          const double scale = std::max( { ( b - a ).two_norm2(), ( c - a ).two_norm2(), ( c - b ).two_norm2() } );
          if( !( std::abs( det ) > 1e-14 * scale ) )
            throw ConstructionError( "simplex grid: simplex " + std::to_string( s ) + " is degenerate" );
          if( det > 0.0 )
            std::swap( t[ 1 ], t[ 2 ] );
          Node node;
          node.vertices = t;
          nodes_.push_back( node );
        }
        numMacro_ = static_cast< int >( nodes_.size() );
      }

      int midpoint ( int a, int b )
      {
        const auto key = edgeKey( a, b );
        auto it = midpoints_.find( key );
        if( it != midpoints_.end() )
          return it->second;
        coordinates_.push_back( 0.5 * ( coordinates_[ a ] + coordinates_[ b ] ) );
        const int m = static_cast< int >( coordinates_.size() ) - 1;
        midpoints_.emplace( key, m );
        return m;
      }

      bool hasMidpoint ( int a, int b ) const { return midpoints_.count( edgeKey( a, b ) ) > 0; }

      //! leaf nodes in depth-first order over the macro triangles
      std::vector< int > leafNodes () const
      {
        std::vector< int > leaves, stack;
        for( int root = numMacro_ - 1; root >= 0; --root )
          stack.push_back( root );
        while( !stack.empty() )
        {
          const int n = stack.back();
          stack.pop_back();
          const Node &node = nodes_[ n ];
          if( node.numChildren == 0 )
            leaves.push_back( n );
          else
            for( int c = node.numChildren - 1; c >= 0; --c )
              stack.push_back( node.firstChild + c );
        }
        return leaves;
      }

      void rebuildLeaf ()
      {
        leaves_ = leafNodes();
        LeafElements elements;
        elements.dimension = 2;
        elements.coordinates = coordinates_;
        for( int n : leaves_ )
          elements.add( triangle, nodes_[ n ].vertices, nodes_[ n ].level );
        setLeaf( std::move( elements ) );
      }

      void addChildren ( int parent, const std::vector< Node > &children )
      {
        const int first = static_cast< int >( nodes_.size() );
        for( const Node &c : children )
          nodes_.push_back( c );
        nodes_[ parent ].firstChild = first;
        nodes_[ parent ].numChildren = static_cast< int >( children.size() );
      }

    public:
      int maxLevel () const override
      {
        int level = 0;
        for( const Node &n : nodes_ )
          level = std::max( level, n.level );
        return level;
      }

      int macroElements () const noexcept { return numMacro_; }

      //! refinement edge (local edge number) of a leaf element
      int refinementEdge ( const Entity &element ) const
      {
        if( element.gridPointer() != this || element.codim() != 0 )
          throw DomainError( "refinementEdge: not an element of this grid" );
        element.check();
        return nodes_[ leaves_[ element.id() ] ].refinementEdge;
      }

    protected:
      std::vector< FieldVector > coordinates_;
      std::vector< Node > nodes_;
      std::vector< int > leaves_;
      std::map< std::pair< int, int >, int > midpoints_;
      int numMacro_ = 0;
    };

  } // namespace Impl



  /** \brief conforming newest vertex bisection grid with local adaptation
   *
   *  The refinement edge of a macro triangle is its longest edge (ties go to
   *  the smallest sorted vertex pair). Bisection splits it at the midpoint m;
   *  the refinement edge of each child is the edge opposite m.
   */
  class BisectionGrid : public Impl::TriangleForest
  {
  public:
    explicit BisectionGrid ( const SimplexGridData &data )
      : TriangleForest( data )
    {
      for( Node &node : nodes_ )
        node.refinementEdge = longestEdge( node.vertices );
      rebuildLeaf();
    }

    std::string implementation () const override { return "bisection"; }

    void globalRefine ( int n = 1 ) override
    {
      if( n < 0 )
        throw DomainError( "globalRefine: negative refinement count" );
      if( n == 0 )
        return;
      for( int pass = 0; pass < n; ++pass )
      {
        for( int node : leafNodes() )
          bisect( node );
        closure();
      }
      rebuildLeaf();
    }

    void adapt ( const MarkFunction &mark ) override
    {
      std::vector< int > marked;
      for( int e = 0; e < static_cast< int >( leaves_.size() ); ++e )
        if( mark( Entity( *this, 0, e ) ) == Marker::refine )
          marked.push_back( leaves_[ e ] );
      if( marked.empty() )
        return;
      for( int node : marked )
        bisect( node );
      closure();
      rebuildLeaf();
    }

  private:
    int longestEdge ( const std::array< int, 3 > &v ) const
    {
      int best = 0;
      double bestLength = -1.0;
      std::pair< int, int > bestKey;
      for( int e = 0; e < 3; ++e )
      {
        const int a = v[ Impl::triangleEdges[ e ][ 0 ] ], b = v[ Impl::triangleEdges[ e ][ 1 ] ];
        const double length = ( coordinates_[ a ] - coordinates_[ b ] ).two_norm2();
        const auto key = Impl::edgeKey( a, b );
        if( length > bestLength || ( length == bestLength && key < bestKey ) )
        {
          best = e;
          bestLength = length;
          bestKey = key;
        }
      }
      return best;
    }

    void bisect ( int n )
    {
      const Node node = nodes_[ n ];
      const int i = Impl::triangleEdges[ node.refinementEdge ][ 0 ];
      const int j = Impl::triangleEdges[ node.refinementEdge ][ 1 ];
      const int m = midpoint( node.vertices[ i ], node.vertices[ j ] );

      Node a, b;
      a.vertices = node.vertices;
      a.vertices[ j ] = m;
      a.refinementEdge = 2 - j;
      b.vertices = node.vertices;
      b.vertices[ i ] = m;
      b.refinementEdge = 2 - i;
      a.level = b.level = node.level + 1;
      addChildren( n, { a, b } );
    }

    //! bisect leaves with hanging nodes until the mesh is conforming
    void closure ()
    {
      bool changed = true;
      while( changed )
      {
        changed = false;
        for( int n : leafNodes() )
        {
          const auto &v = nodes_[ n ].vertices;
          for( const auto &edge : Impl::triangleEdges )
            if( hasMidpoint( v[ edge[ 0 ] ], v[ edge[ 1 ] ] ) )
            {
              bisect( n );
              changed = true;
              break;
            }
        }
      }
    }
  };



  /** \brief triangle grid refined by splitting every triangle into four
   *
   *  Children of (c0,c1,c2) with edge midpoints mij are
   *  (c0,m01,m02), (m01,c1,m12), (m02,m12,c2), (m12,m02,m01).
   */
  class QuarteringGrid : public Impl::TriangleForest
  {
  public:
    explicit QuarteringGrid ( const SimplexGridData &data )
      : TriangleForest( data )
    {
      rebuildLeaf();
    }

    std::string implementation () const override { return "quartering"; }

    void globalRefine ( int n = 1 ) override
    {
      if( n < 0 )
        throw DomainError( "globalRefine: negative refinement count" );
      if( n == 0 )
        return;
      for( int pass = 0; pass < n; ++pass )
        for( int node : leafNodes() )
        {
          const Node parent = nodes_[ node ];
          const auto &c = parent.vertices;
          const int m01 = midpoint( c[ 0 ], c[ 1 ] );
          const int m02 = midpoint( c[ 0 ], c[ 2 ] );
          const int m12 = midpoint( c[ 1 ], c[ 2 ] );
          std::vector< Node > children( 4 );
          children[ 0 ].vertices = { c[ 0 ], m01, m02 };
          children[ 1 ].vertices = { m01, c[ 1 ], m12 };
          children[ 2 ].vertices = { m02, m12, c[ 2 ] };
          children[ 3 ].vertices = { m12, m02, m01 };
          for( Node &child : children )
            child.level = parent.level + 1;
          addChildren( node, children );
        }
      rebuildLeaf();
    }
  };

  inline GridView conformGrid ( const SimplexGridData &data )
  {
    return GridView( std::make_shared< BisectionGrid >( data ) );
  }

  inline GridView simplexGrid ( const SimplexGridData &data )
  {
    return GridView( std::make_shared< QuarteringGrid >( data ) );
  }

} // namespace gridkit

#endif // GRIDKIT_GRID_SIMPLEXGRID_HH
