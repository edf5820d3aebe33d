#ifndef GRIDKIT_FUNCTION_GRIDFUNCTION_HH
#define GRIDKIT_FUNCTION_GRIDFUNCTION_HH

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <gridkit/common/array2.hh>
#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/mapper/mcmgmapper.hh>

namespace gridkit
{

  //! nodal basis of the linear (simplex) or multilinear (cube) element
  inline std::vector< double > p1Basis ( GeometryType type, const FieldVector &x )
  {
    const int dim = type.dim();
    std::vector< double > phi;
    if( type.isSimplex() )
    {
      double sum = 0.0;
      for( int k = 0; k < dim; ++k )
        sum += x[ k ];
      phi.push_back( 1.0 - sum );
      for( int k = 0; k < dim; ++k )
        phi.push_back( x[ k ] );
    }
    else
    {
      for( int corner = 0; corner < ( 1 << dim ); ++corner )
      {
        double p = 1.0;
        for( int k = 0; k < dim; ++k )
          p *= ( ( corner >> k ) & 1 ) ? x[ k ] : 1.0 - x[ k ];
        phi.push_back( p );
      }
    }
    return phi;
  }

  class LocalFunction;

  /** \brief function on a grid view that can be evaluated element-wise
   *
   *  The backing is either a world-coordinate callable, an element-local
   *  callable, or P1 vertex data. Callables receive a whole batch of points
   *  and return one row per point; callbacks() counts their invocations.
   */
  class GridFunction
  {
  public:
    enum class Kind { global, local, p1 };

    using GlobalBatch = std::function< Array2( std::span< const FieldVector > ) >;
    using LocalBatch = std::function< Array2( const Entity &, std::span< const FieldVector > ) >;

    GridFunction () = default;

    static GridFunction fromGlobal ( GridView view, GlobalBatch f, int range = 0 )
    {
      auto s = std::make_shared< State >();
      s->kind = Kind::global;
      s->view = std::move( view );
      s->global = std::move( f );
      return GridFunction( std::move( s ), range );
    }

    static GridFunction fromLocal ( GridView view, LocalBatch f, int range = 0 )
    {
      auto s = std::make_shared< State >();
      s->kind = Kind::local;
      s->view = std::move( view );
      s->local = std::move( f );
      return GridFunction( std::move( s ), range );
    }

    static GridFunction p1 ( MCMGMapper mapper, std::vector< double > data )
    {
      const GridView &view = mapper.gridView();
      const int dim = view.dimension();
      for( int codim = 0; codim <= dim; ++codim )
        for( GeometryType gt : view.indexSet().types( codim ) )
          if( mapper.blockSize( gt ) != ( codim == dim ? 1 : 0 ) )
            throw DomainError( "p1Function: mapper layout must attach exactly one index to each vertex and none elsewhere" );
      if( static_cast< std::int64_t >( data.size() ) != mapper.size() )
        throw DomainError( "p1Function: data has length " + std::to_string( data.size() ) + ", mapper size is "
                           + std::to_string( mapper.size() ) );
      auto s = std::make_shared< State >();
      s->kind = Kind::p1;
      s->view = view;
      s->mapper = std::move( mapper );
      s->data = std::make_shared< const std::vector< double > >( std::move( data ) );
      return GridFunction( std::move( s ), 1 );
    }

    Kind kind () const { return state().kind; }
    const GridView &gridView () const { return state().view; }
    int rangeDimension () const noexcept { return range_; }

    //! number of invocations of the backing callable so far
    long callbacks () const { return state().callbacks.load(); }
    void resetCallbacks () const { state().callbacks = 0; }

    //! values at a batch of local coordinates of one element, N x range
    Array2 evaluate ( const Entity &element, std::span< const FieldVector > local ) const
    {
      const State &s = state();
      checkElement( element );
      if( local.empty() )
        return Array2( 0, range_ );
      switch( s.kind )
      {
      case Kind::global:
      {
        const auto world = element.geometry().toGlobal( local );
        return checked( invoke( [ & ] { return s.global( world ); } ), local.size() );
      }
      case Kind::local:
        return checked( invoke( [ & ] { return s.local( element, local ); } ), local.size() );
      default:
        return evaluateP1( element, gatherDofs( element ), local );
      }
    }

    std::vector< double > operator() ( const Entity &element, const FieldVector &local ) const
    {
      const Array2 v = evaluate( element, std::span< const FieldVector >( &local, 1 ) );
      return { v.row( 0 ).begin(), v.row( 0 ).end() };
    }

    //! evaluation at a world point; only for functions given in world coordinates
    std::vector< double > evalGlobal ( const FieldVector &x ) const
    {
      const State &s = state();
      if( s.kind != Kind::global )
        throw CapabilityError( "evalGlobal: function is not defined in world coordinates" );
      const Array2 v = checked( invoke( [ & ] { return s.global( std::span< const FieldVector >( &x, 1 ) ); } ), 1 );
      return { v.row( 0 ).begin(), v.row( 0 ).end() };
    }

    Array2 evalGlobal ( std::span< const FieldVector > xs ) const
    {
      const State &s = state();
      if( s.kind != Kind::global )
        throw CapabilityError( "evalGlobal: function is not defined in world coordinates" );
      if( xs.empty() )
        return Array2( 0, range_ );
      return checked( invoke( [ & ] { return s.global( xs ); } ), xs.size() );
    }

    const MCMGMapper &mapper () const
    {
      if( state().kind != Kind::p1 )
        throw CapabilityError( "mapper: function has no discrete data" );
      return state().mapper;
    }

    const std::vector< double > &dofs () const
    {
      if( state().kind != Kind::p1 )
        throw CapabilityError( "dofs: function has no discrete data" );
      return *state().data;
    }

    LocalFunction localFunction () const;

  private:
    friend class LocalFunction;

    struct State
    {
      Kind kind = Kind::global;
      GridView view;
      GlobalBatch global;
      LocalBatch local;
      MCMGMapper mapper;
      std::shared_ptr< const std::vector< double > > data;
      mutable std::atomic< long > callbacks{ 0 };
    };

    GridFunction ( std::shared_ptr< State > state, int range )
      : state_( std::move( state ) ), range_( range )
    {
      if( range_ <= 0 )
      {
        // probe once at the barycenter of the first element
        const auto elements = state_->view.elements();
        if( elements.size() == 0 )
          throw DomainError( "GridFunction: cannot determine the range of a function on an empty grid" );
        const Entity e = elements[ 0 ];
        const FieldVector x = e.referenceElement().center();
        Array2 v;
        if( state_->kind == Kind::global )
          v = state_->global( std::span< const FieldVector >( &x, 1 ) );
        else
          v = state_->local( e, std::span< const FieldVector >( &x, 1 ) );
        if( v.rows() != 1 || v.cols() == 0 )
          throw ShapeError( "GridFunction: probe evaluation returned " + std::to_string( v.rows() ) + "x" + std::to_string( v.cols() ) + " values" );
        range_ = static_cast< int >( v.cols() );
      }
    }

    const State &state () const
    {
      if( !state_ )
        throw StateError( "GridFunction: empty function" );
      return *state_;
    }

    template< class F >
    Array2 invoke ( F &&f ) const
    {
      ++state_->callbacks;
      return f();
    }

    Array2 checked ( Array2 v, std::size_t n ) const
    {
      if( v.rows() != n || v.cols() != std::size_t( range_ ) )
        throw ShapeError( "GridFunction: callable returned " + std::to_string( v.rows() ) + "x" + std::to_string( v.cols() )
                          + " values, expected " + std::to_string( n ) + "x" + std::to_string( range_ ) );
      return v;
    }

    void checkElement ( const Entity &element ) const
    {
      if( element.gridPointer() != state_->view.gridPointer().get() )
        throw DomainError( "GridFunction: element does not belong to the function's grid" );
      if( element.codim() != 0 )
        throw DomainError( "GridFunction: evaluation needs an element" );
      element.check();
    }

    std::vector< double > gatherDofs ( const Entity &element ) const
    {
      std::vector< double > dofs;
      for( auto i : state_->mapper.subIndices( element, element.grid().dimension() ) )
        dofs.push_back( ( *state_->data )[ i ] );
      return dofs;
    }

    static Array2 evaluateP1 ( const Entity &element, const std::vector< double > &dofs, std::span< const FieldVector > local )
    {
      Array2 v( local.size(), 1 );
      const GeometryType type = element.type();
      for( std::size_t q = 0; q < local.size(); ++q )
      {
        const auto phi = p1Basis( type, local[ q ] );
        double sum = 0.0;
        for( std::size_t i = 0; i < phi.size(); ++i )
          sum += phi[ i ] * dofs[ i ];
        v( q, 0 ) = sum;
      }
      return v;
    }

    std::shared_ptr< State > state_;
    int range_ = 0;
  };



  /** \brief evaluation cursor bound to one element at a time
   *
   *  For P1 data the element's vertex values are read once per bind();
   *  dofReads() counts these reads.
   */
  class LocalFunction
  {
  public:
    explicit LocalFunction ( GridFunction gf ) : gf_( std::move( gf ) ) {}

    void bind ( const Entity &element )
    {
      gf_.checkElement( element );
      element_ = element;
      dofs_.clear();
      if( gf_.kind() == GridFunction::Kind::p1 )
      {
        dofs_ = gf_.gatherDofs( element );
        dofReads_ += static_cast< long >( dofs_.size() );
      }
    }

    void unbind ()
    {
      element_.reset();
      dofs_.clear();
    }

    bool bound () const noexcept { return element_.has_value(); }
    const Entity &element () const
    {
      if( !element_ )
        throw StateError( "LocalFunction: not bound to an element" );
      return *element_;
    }

    long dofReads () const noexcept { return dofReads_; }
    int rangeDimension () const noexcept { return gf_.rangeDimension(); }

    Array2 evaluate ( std::span< const FieldVector > local ) const
    {
      const Entity &e = element();
      e.check();
      if( gf_.kind() == GridFunction::Kind::p1 )
        return GridFunction::evaluateP1( e, dofs_, local );
      return gf_.evaluate( e, local );
    }

    std::vector< double > operator() ( const FieldVector &local ) const
    {
      const Array2 v = evaluate( std::span< const FieldVector >( &local, 1 ) );
      return { v.row( 0 ).begin(), v.row( 0 ).end() };
    }

  private:
    GridFunction gf_;
    std::optional< Entity > element_;
    std::vector< double > dofs_;
    long dofReads_ = 0;
  };

  inline LocalFunction GridFunction::localFunction () const { return LocalFunction( *this ); }



  namespace Impl
  {

    inline void appendValues ( std::vector< double > &out, double v ) { out.push_back( v ); }
    inline void appendValues ( std::vector< double > &out, const FieldVector &v ) { out.insert( out.end(), v.begin(), v.end() ); }
    inline void appendValues ( std::vector< double > &out, const std::vector< double > &v ) { out.insert( out.end(), v.begin(), v.end() ); }

    //! turn a pointwise callable into a batch callable
    template< class F, class... Args >
    Array2 pointwiseBatch ( const F &f, std::span< const FieldVector > xs, const Args &... args )
    {
      std::vector< double > values;
      std::size_t cols = 0;
      for( const auto &x : xs )
      {
        const std::size_t before = values.size();
        appendValues( values, f( args..., x ) );
        cols = values.size() - before;
      }
      return Array2( xs.size(), xs.empty() ? 0 : cols, std::move( values ) );
    }

  } // namespace Impl

  /** \brief grid function from a callable in world coordinates
   *
   *  \p f either takes a span of points and returns an Array2, or takes a
   *  single point and returns a double, FieldVector or vector of doubles.
   */
  template< class F >
  GridFunction gridFunctionFromGlobal ( const GridView &view, F f, int range = 0 )
  {
    if constexpr( std::is_invocable_r_v< Array2, F, std::span< const FieldVector > > )
      return GridFunction::fromGlobal( view, GridFunction::GlobalBatch( std::move( f ) ), range );
    else
      return GridFunction::fromGlobal( view, [ f = std::move( f ) ] ( std::span< const FieldVector > xs ) {
          return Impl::pointwiseBatch( f, xs );
        }, range );
  }

  //! grid function from a callable (element, local coordinate), batch or pointwise
  template< class F >
  GridFunction gridFunctionFromLocal ( const GridView &view, F f, int range = 0 )
  {
    if constexpr( std::is_invocable_r_v< Array2, F, const Entity &, std::span< const FieldVector > > )
      return GridFunction::fromLocal( view, GridFunction::LocalBatch( std::move( f ) ), range );
    else
      return GridFunction::fromLocal( view, [ f = std::move( f ) ] ( const Entity &e, std::span< const FieldVector > xs ) {
          return Impl::pointwiseBatch( f, xs, e );
        }, range );
  }

  inline GridFunction p1Function ( MCMGMapper mapper, std::vector< double > data )
  {
    return GridFunction::p1( std::move( mapper ), std::move( data ) );
  }

} // namespace gridkit

#endif // GRIDKIT_FUNCTION_GRIDFUNCTION_HH
