#ifndef GRIDKIT_SCHEMES_L2NORM_HH
#define GRIDKIT_SCHEMES_L2NORM_HH

#include <string>

#include <gridkit/common/array2.hh>
#include <gridkit/common/exceptions.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/geometry/quadrature.hh>
#include <gridkit/grid/gridview.hh>

namespace gridkit
{

  //! loop evaluates the function point by point, batch once per element
  enum class EvaluationMode { loop, batch };

  inline std::string name ( EvaluationMode mode ) { return mode == EvaluationMode::loop ? "loop" : "batch"; }

  /** \brief sum over elements and quadrature points of w |det J| |gf|^2
   */
  inline double l2Norm2 ( const GridView &view, const GridFunction &gf, const QuadratureRules &rules,
                          EvaluationMode mode = EvaluationMode::batch )
  {
    double sum = 0.0;
    for( const Entity &element : view.elements() )
    {
      const AffineGeometry geometry = element.geometry();
      const QuadratureRule &rule = rules( element.type() );
      if( mode == EvaluationMode::loop )
      {
        for( const QuadraturePoint &qp : rule )
        {
          const double weight = qp.weight * geometry.integrationElement( qp.position );
          for( double v : gf( element, qp.position ) )
            sum += v * v * weight;
        }
      }
      else
      {
        const auto &[ positions, weights ] = rule.get();
        const Array2 values = gf.evaluate( element, positions );
        const std::vector< double > ie = geometry.integrationElement( positions );
        for( std::size_t q = 0; q < positions.size(); ++q )
        {
          double s = 0.0;
          for( double v : values.row( q ) )
            s += v * v;
          sum += s * weights[ q ] * ie[ q ];
        }
      }
    }
    return sum;
  }

} // namespace gridkit

#endif // GRIDKIT_SCHEMES_L2NORM_HH
