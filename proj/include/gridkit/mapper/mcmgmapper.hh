#ifndef GRIDKIT_MAPPER_MCMGMAPPER_HH
#define GRIDKIT_MAPPER_MCMGMAPPER_HH

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/geometry/type.hh>
#include <gridkit/grid/gridview.hh>

namespace gridkit
{

  /** \brief number of indices attached to each geometry type
   *
   *  Can be given per codimension, per geometry type, or as a function of
   *  the geometry type (a bool result counts as 0 or 1).
   */
  class Layout
  {
  public:
    using Function = std::function< int( GeometryType ) >;

    Layout () = default;

    static Layout perCodim ( std::vector< int > counts )
    {
      Layout l;
      l.kind_ = Kind::codim;
      l.codimCounts_ = std::move( counts );
      return l;
    }

    static Layout perType ( std::map< GeometryType, int > counts )
    {
      Layout l;
      l.kind_ = Kind::type;
      l.typeCounts_ = std::move( counts );
      return l;
    }

    static Layout function ( Function f )
    {
      Layout l;
      l.kind_ = Kind::function;
      l.function_ = std::move( f );
      return l;
    }

    int count ( GeometryType type, int gridDim ) const
    {
      int n = 0;
      switch( kind_ )
      {
      case Kind::codim:
      {
        const std::size_t codim = gridDim - type.dim();
        n = codim < codimCounts_.size() ? codimCounts_[ codim ] : 0;
        break;
      }
      case Kind::type:
      {
        auto it = typeCounts_.find( type );
        n = it != typeCounts_.end() ? it->second : 0;
        break;
      }
      case Kind::function:
        n = function_ ? function_( type ) : 0;
        break;
      case Kind::empty:
        break;
      }
      if( n < 0 )
        throw DomainError( "Layout: negative count " + std::to_string( n ) + " for " + type.name() );
      return n;
    }

  private:
    enum class Kind { empty, codim, type, function };
    Kind kind_ = Kind::empty;
    std::vector< int > codimCounts_;
    std::map< GeometryType, int > typeCounts_;
    Function function_;
  };



  /** \brief multiple codim, multiple geometry type mapper
   *
   *  Every entity of a geometry type with count k gets the contiguous block
   *  offset(type) + k*index(entity) ... + k-1. Types are ordered by codim
   *  (elements first) and by shape within a codim. The mapper is bound to
   *  the grid state at construction and must be rebuilt after refinement.
   */
  class MCMGMapper
  {
  public:
    MCMGMapper () = default;

    MCMGMapper ( GridView view, const Layout &layout )
      : view_( std::move( view ) )
    {
      const auto &grid = view_.hierarchicalGrid();
      generation_ = grid.generation();
      const int dim = grid.dimension();
      const IndexSet indexSet = view_.indexSet();
      for( int codim = 0; codim <= dim; ++codim )
        for( GeometryType gt : indexSet.types( codim ) )
        {
          const int k = layout.count( gt, dim );
          blocks_[ gt ] = { size_, k };
          size_ += std::int64_t( k ) * indexSet.size( gt );
        }
    }

    const GridView &gridView () const noexcept { return view_; }
    std::int64_t size () const noexcept { return size_; }

    //! number of indices attached to entities of the given type
    int blockSize ( GeometryType type ) const
    {
      auto it = blocks_.find( type );
      return it == blocks_.end() ? 0 : it->second.count;
    }

    std::int64_t offset ( GeometryType type ) const
    {
      auto it = blocks_.find( type );
      return it == blocks_.end() ? size_ : it->second.offset;
    }

    //! first index of the entity's block
    std::int64_t index ( const Entity &e ) const
    {
      check();
      const GeometryType gt = e.type();
      const Block &b = block( gt );
      return b.offset + std::int64_t( b.count ) * view_.indexSet().index( e );
    }

    bool contains ( const Entity &e ) const
    {
      check();
      return blockSize( e.type() ) > 0;
    }

    //! blocks of all codim-c subentities of an element, in reference order
    std::vector< std::int64_t > subIndices ( const Entity &e, int c ) const
    {
      check();
      if( e.codim() != 0 )
        throw DomainError( "subIndices: entity must be an element" );
      std::vector< std::int64_t > result;
      const auto indices = view_.indexSet().subIndices( e, c );
      const auto &ref = e.referenceElement();
      for( std::size_t i = 0; i < indices.size(); ++i )
        appendBlock( result, block( ref.type( i, c ) ), indices[ i ] );
      return result;
    }

    //! all indices of an element and its subentities, by decreasing codim
    std::vector< std::int64_t > all ( const Entity &e ) const
    {
      check();
      if( e.codim() != 0 )
        throw DomainError( "all: entity must be an element" );
      std::vector< std::int64_t > result;
      const IndexSet indexSet = view_.indexSet();
      const auto &ref = e.referenceElement();
      for( int c = view_.dimension(); c >= 0; --c )
      {
        const auto indices = indexSet.subIndices( e, c );
        for( std::size_t i = 0; i < indices.size(); ++i )
        {
          auto it = blocks_.find( ref.type( i, c ) );
          if( it != blocks_.end() && it->second.count > 0 )
            appendBlock( result, it->second, indices[ i ] );
        }
      }
      return result;
    }

    bool valid () const noexcept
    {
      return view_.gridPointer() && view_.hierarchicalGrid().generation() == generation_;
    }

  private:
    struct Block
    {
      std::int64_t offset = 0;
      int count = 0;
    };

    void check () const
    {
      if( !valid() )
        throw InvalidationError( "MCMGMapper: grid has been modified since the mapper was built" );
    }

    const Block &block ( GeometryType gt ) const
    {
      auto it = blocks_.find( gt );
      if( it == blocks_.end() || it->second.count == 0 )
        throw DomainError( "MCMGMapper: layout attaches no indices to " + gt.name() );
      return it->second;
    }

    static void appendBlock ( std::vector< std::int64_t > &result, const Block &b, int index )
    {
      for( int k = 0; k < b.count; ++k )
        result.push_back( b.offset + std::int64_t( b.count ) * index + k );
    }

    GridView view_;
    std::uint64_t generation_ = 0;
    std::map< GeometryType, Block > blocks_;
    std::int64_t size_ = 0;
  };

  inline MCMGMapper mapper ( const GridView &view, const Layout &layout ) { return MCMGMapper( view, layout ); }

  inline MCMGMapper mapper ( const GridView &view, std::vector< int > perCodim )
  {
    return MCMGMapper( view, Layout::perCodim( std::move( perCodim ) ) );
  }

  inline MCMGMapper mapper ( const GridView &view, std::map< GeometryType, int > perType )
  {
    return MCMGMapper( view, Layout::perType( std::move( perType ) ) );
  }

  inline MCMGMapper mapper ( const GridView &view, Layout::Function f )
  {
    return MCMGMapper( view, Layout::function( std::move( f ) ) );
  }

} // namespace gridkit

#endif // GRIDKIT_MAPPER_MCMGMAPPER_HH
