#ifndef GRIDKIT_FUNCTION_INTEGRATE_HH
#define GRIDKIT_FUNCTION_INTEGRATE_HH

#include <functional>
#include <span>
#include <vector>

#include <gridkit/common/array2.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/geometry/quadrature.hh>
#include <gridkit/grid/entity.hh>

namespace gridkit
{

  using ElementIntegrand = std::function< Array2( const Entity &, std::span< const FieldVector > ) >;

  /** \brief quadrature over one element with a single batched integrand call
   *
   *  Returns sum_q w_q |det J(x_q)| g(e, x_q), one entry per integrand column.
   */
  inline std::vector< double > integrate ( const QuadratureRules &rules, const Entity &element, const ElementIntegrand &integrand )
  {
    const QuadratureRule &rule = rules( element.type() );
    const auto &[ positions, weights ] = rule.get();
    const AffineGeometry geometry = element.geometry();
    const std::vector< double > ie = geometry.integrationElement( positions );
    const Array2 values = integrand( element, positions );
    if( values.rows() != positions.size() )
      throw ShapeError( "integrate: integrand returned " + std::to_string( values.rows() ) + " rows for "
                        + std::to_string( positions.size() ) + " points" );
    std::vector< double > result( values.cols(), 0.0 );
    for( std::size_t q = 0; q < positions.size(); ++q )
      for( std::size_t k = 0; k < values.cols(); ++k )
        result[ k ] += weights[ q ] * ie[ q ] * values( q, k );
    return result;
  }

  inline std::vector< double > integrate ( const QuadratureRules &rules, const Entity &element, const GridFunction &f )
  {
    return integrate( rules, element, [ &f ] ( const Entity &e, std::span< const FieldVector > x ) { return f.evaluate( e, x ); } );
  }

} // namespace gridkit

#endif // GRIDKIT_FUNCTION_INTEGRATE_HH
