#ifndef GRIDKIT_SCHEMES_CG_HH
#define GRIDKIT_SCHEMES_CG_HH

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/schemes/sparse.hh>

namespace gridkit
{

  struct CGResult
  {
    std::vector< double > x;
    int iterations = 0;
    double residual = 0.0;
  };

  namespace Impl
  {
    inline double dot ( std::span< const double > a, std::span< const double > b )
    {
      double s = 0.0;
      for( std::size_t i = 0; i < a.size(); ++i )
        s += a[ i ] * b[ i ];
      return s;
    }
  } // namespace Impl

  /** \brief unpreconditioned conjugate gradients
   *
   *  Stops once |Ax - b| <= tol |b|; throws ConvergenceError after maxIter
   *  iterations.
   */
  inline CGResult cgSolve ( const SparseMatrix &A, std::span< const double > b, double tol, int maxIter )
  {
    const int n = A.rows();
    if( A.cols() != n || static_cast< int >( b.size() ) != n )
      throw ShapeError( "cgSolve: system is not square or right hand side has wrong length" );

    CGResult result;
    result.x.assign( n, 0.0 );
    std::vector< double > r( b.begin(), b.end() ), p = r;
    const double bnorm = std::sqrt( Impl::dot( b, b ) );
    double rr = Impl::dot( r, r );
    result.residual = std::sqrt( rr );
    if( result.residual <= tol * bnorm )
      return result;

    for( int it = 1; it <= maxIter; ++it )
    {
      const std::vector< double > Ap = A.mv( p );
      const double pAp = Impl::dot( p, Ap );
      if( !( pAp > 0.0 ) )
        throw NumericError( "cgSolve: matrix is not positive definite" );
      const double alpha = rr / pAp;
      for( int i = 0; i < n; ++i )
      {
        result.x[ i ] += alpha * p[ i ];
        r[ i ] -= alpha * Ap[ i ];
      }
      double rrNew = Impl::dot( r, r );
      result.iterations = it;
      result.residual = std::sqrt( rrNew );
      if( result.residual <= tol * bnorm )
      {
        // confirm with the true residual, restart from it otherwise
        const std::vector< double > Ax = A.mv( result.x );
        for( int i = 0; i < n; ++i )
          r[ i ] = b[ i ] - Ax[ i ];
        rrNew = Impl::dot( r, r );
        result.residual = std::sqrt( rrNew );
        if( result.residual <= tol * bnorm )
          return result;
        rr = rrNew;
        p = r;
        continue;
      }
      const double beta = rrNew / rr;
      rr = rrNew;
      for( int i = 0; i < n; ++i )
        p[ i ] = r[ i ] + beta * p[ i ];
    }
    throw ConvergenceError( "cgSolve: no convergence after " + std::to_string( maxIter ) + " iterations", result.residual, maxIter );
  }

} // namespace gridkit

#endif // GRIDKIT_SCHEMES_CG_HH
