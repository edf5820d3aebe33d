#ifndef GRIDKIT_GEOMETRY_QUADRATURE_HH
#define GRIDKIT_GEOMETRY_QUADRATURE_HH

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <gridkit/common/fieldvector.hh>
#include <gridkit/geometry/type.hh>

namespace gridkit
{

  struct QuadraturePoint
  {
    FieldVector position;
    double weight = 0.0;
  };

  /** \brief quadrature rule on a reference element
   *
   *  The rule is exact for polynomials up to order(). Weights sum to the
   *  volume of the reference element; individual weights may be negative.
   */
  class QuadratureRule
  {
  public:
    QuadratureRule () = default;

    QuadratureRule ( GeometryType type, int order, std::vector< QuadraturePoint > points )
      : type_( type ), order_( order ), points_( std::move( points ) )
    {}

    GeometryType type () const noexcept { return type_; }
    int order () const noexcept { return order_; }
    std::size_t size () const noexcept { return points_.size(); }

    auto begin () const noexcept { return points_.begin(); }
    auto end () const noexcept { return points_.end(); }
    const QuadraturePoint &operator[] ( std::size_t i ) const { return points_[ i ]; }

    //! positions and weights as separate arrays, in point order
    struct Arrays
    {
      std::vector< FieldVector > positions;
      std::vector< double > weights;
    };

    Arrays get () const
    {
      Arrays a;
      a.positions.reserve( points_.size() );
      a.weights.reserve( points_.size() );
      for( const auto &p : points_ )
      {
        a.positions.push_back( p.position );
        a.weights.push_back( p.weight );
      }
      return a;
    }

  private:
    GeometryType type_;
    int order_ = 0;
    std::vector< QuadraturePoint > points_;
  };

  namespace Impl
  {

    //! Gauss-Legendre points on [0,1] with n points, Newton iteration on P_n
    inline std::vector< QuadraturePoint > gaussLegendre ( int n )
    {
      std::vector< QuadraturePoint > points( n );
      for( int i = 0; i < n; ++i )
      {
        double x = std::cos( std::numbers::pi * ( i + 0.75 ) / ( n + 0.5 ) );
        double dp = 1.0;
        for( int iter = 0; iter < 100; ++iter )
        {
          double p0 = 1.0, p1 = x;
          for( int k = 2; k <= n; ++k )
          {
            const double p2 = ( ( 2*k - 1 ) * x * p1 - ( k - 1 ) * p0 ) / k;
            p0 = p1;
            p1 = p2;
          }
          dp = n * ( x * p1 - p0 ) / ( x * x - 1.0 );
          const double dx = p1 / dp;
          x -= dx;
          if( std::abs( dx ) < 1e-16 )
            break;
        }
        // recompute the derivative at the converged node
        double p0 = 1.0, p1 = x;
        for( int k = 2; k <= n; ++k )
        {
          const double p2 = ( ( 2*k - 1 ) * x * p1 - ( k - 1 ) * p0 ) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * ( x * p1 - p0 ) / ( x * x - 1.0 );
        const double w = 2.0 / ( ( 1.0 - x * x ) * dp * dp );
        // ascending order on [0,1]
        points[ i ].position = FieldVector{ 0.5 * ( 1.0 - x ) };
        points[ i ].weight = 0.5 * w;
      }
      return points;
    }

    inline std::vector< QuadraturePoint > tensorRule ( int dim, int order )
    {
      const auto line = gaussLegendre( order / 2 + 1 );
      std::vector< QuadraturePoint > points{ QuadraturePoint{ FieldVector( 0 ), 1.0 } };
      for( int d = 0; d < dim; ++d )
      {
        std::vector< QuadraturePoint > next;
        next.reserve( points.size() * line.size() );
        // the new coordinate is the slowest one: first coordinate runs fastest
        for( const auto &q : line )
          for( const auto &p : points )
          {
            FieldVector x( d+1 );
            for( int k = 0; k < d; ++k )
              x[ k ] = p.position[ k ];
            x[ d ] = q.position[ 0 ];
            next.push_back( { x, p.weight * q.weight } );
          }
        points = std::move( next );
      }
      return points;
    }

    //! the three permutations (a,a), (1-2a,a), (a,1-2a) of a symmetric orbit
    inline void addOrbit ( std::vector< QuadraturePoint > &points, double a, double weight )
    {
      points.push_back( { FieldVector{ a, a }, weight } );
      points.push_back( { FieldVector{ 1.0 - 2.0*a, a }, weight } );
      points.push_back( { FieldVector{ a, 1.0 - 2.0*a }, weight } );
    }

    inline std::vector< QuadraturePoint > triangleRule ( int order )
    {
      std::vector< QuadraturePoint > points;
      switch( order )
      {
      case 0:
      case 1:
        points.push_back( { FieldVector{ 1.0/3.0, 1.0/3.0 }, 0.5 } );
        break;

      case 2:
        points.push_back( { FieldVector{ 1.0/6.0, 1.0/6.0 }, 1.0/6.0 } );
        points.push_back( { FieldVector{ 2.0/3.0, 1.0/6.0 }, 1.0/6.0 } );
        points.push_back( { FieldVector{ 1.0/6.0, 2.0/3.0 }, 1.0/6.0 } );
        break;

      case 3:
        // four point rule with a negative centroid weight
        points.push_back( { FieldVector{ 1.0/3.0, 1.0/3.0 }, -27.0/96.0 } );
        points.push_back( { FieldVector{ 0.6, 0.2 }, 25.0/96.0 } );
        points.push_back( { FieldVector{ 0.2, 0.6 }, 25.0/96.0 } );
        points.push_back( { FieldVector{ 0.2, 0.2 }, 25.0/96.0 } );
        break;

      case 4:
        addOrbit( points, 0.4459484909159648863183293, 0.1116907948390057328475035 );
        addOrbit( points, 0.09157621350977074345957146, 0.05497587182766093381916316 );
        break;

      case 5:
      {
        const double s15 = std::sqrt( 15.0 );
        points.push_back( { FieldVector{ 1.0/3.0, 1.0/3.0 }, 9.0/80.0 } );
        addOrbit( points, ( 6.0 - s15 ) / 21.0, ( 155.0 - s15 ) / 2400.0 );
        addOrbit( points, ( 6.0 + s15 ) / 21.0, ( 155.0 + s15 ) / 2400.0 );
        break;
      }

      default:
        throw CapabilityError( "quadratureRule: order " + std::to_string( order ) + " not available for triangle (max order 5)" );
      }
      return points;
    }

  } // namespace Impl

  inline constexpr int maxTriangleOrder = 5;
  inline constexpr int maxTensorOrder = 13;

  //! maximal tabulated order for a geometry type; -1 if unsupported
  inline int maxQuadratureOrder ( GeometryType type )
  {
    if( type.isVertex() )
      return std::numeric_limits< int >::max();
    if( type.isTriangle() )
      return maxTriangleOrder;
    if( type.isLine() || type.isCube() )
      return maxTensorOrder;
    return -1;
  }

  inline QuadratureRule quadratureRule ( GeometryType type, int order )
  {
    if( order < 0 )
      throw DomainError( "quadratureRule: negative order" );
    const int maxOrder = maxQuadratureOrder( type );
    if( maxOrder < 0 )
      throw CapabilityError( "quadratureRule: no rules for " + type.name() );
    if( order > maxOrder )
      throw CapabilityError( "quadratureRule: order " + std::to_string( order ) + " not available for " + type.name()
                             + " (max order " + std::to_string( maxOrder ) + ")" );

    if( type.isVertex() )
      return QuadratureRule( type, order, { QuadraturePoint{ FieldVector( 0 ), 1.0 } } );
    if( type.isTriangle() )
      return QuadratureRule( type, order, Impl::triangleRule( order ) );
    return QuadratureRule( type, order, Impl::tensorRule( type.dim(), order ) );
  }



  /** \brief lazily populated set of rules of one order, keyed by geometry type
   *
   *  Lookups of the same type return the same rule object.
   */
  class QuadratureRules
  {
  public:
    explicit QuadratureRules ( int order )
      : order_( order ), state_( std::make_shared< State >() )
    {
      if( order < 0 )
        throw DomainError( "quadratureRules: negative order" );
    }

    int order () const noexcept { return order_; }

    const QuadratureRule &operator() ( GeometryType type ) const
    {
      std::lock_guard< std::mutex > guard( state_->mutex );
      auto it = state_->cache.find( type );
      if( it == state_->cache.end() )
        it = state_->cache.emplace( type, std::make_unique< const QuadratureRule >( quadratureRule( type, order_ ) ) ).first;
      return *it->second;
    }

    std::size_t cachedTypes () const
    {
      std::lock_guard< std::mutex > guard( state_->mutex );
      return state_->cache.size();
    }

  private:
    struct State
    {
      std::mutex mutex;
      std::map< GeometryType, std::unique_ptr< const QuadratureRule > > cache;
    };

    int order_;
    std::shared_ptr< State > state_;
  };

  inline QuadratureRules quadratureRules ( int order ) { return QuadratureRules( order ); }

} // namespace gridkit

#endif // GRIDKIT_GEOMETRY_QUADRATURE_HH
