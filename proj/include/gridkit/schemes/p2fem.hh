#ifndef GRIDKIT_SCHEMES_P2FEM_HH
#define GRIDKIT_SCHEMES_P2FEM_HH

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gridkit/common/array2.hh>
#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/geometry/affinegeometry.hh>
#include <gridkit/geometry/quadrature.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/grid/simplexgrid.hh>
#include <gridkit/mapper/mcmgmapper.hh>
#include <gridkit/schemes/cg.hh>
#include <gridkit/schemes/sparse.hh>

namespace gridkit
{

  /** \brief quadratic Lagrange shape functions on the reference triangle
   *
   *  Local numbering: the three corners, then the midpoints of the
   *  reference edges {0,1}, {0,2}, {1,2}.
   */
  struct P2Basis
  {
    static constexpr int size = 6;
    static constexpr std::array< std::array< int, 2 >, 3 > edges{ { { 0, 1 }, { 0, 2 }, { 1, 2 } } };

    static std::array< double, 3 > barycentric ( const FieldVector &x )
    {
      return { 1.0 - x[ 0 ] - x[ 1 ], x[ 0 ], x[ 1 ] };
    }

    static std::array< double, size > values ( const FieldVector &x )
    {
      const auto l = barycentric( x );
      std::array< double, size > phi;
      for( int i = 0; i < 3; ++i )
        phi[ i ] = l[ i ] * ( 2.0 * l[ i ] - 1.0 );
      for( int k = 0; k < 3; ++k )
        phi[ 3 + k ] = 4.0 * l[ edges[ k ][ 0 ] ] * l[ edges[ k ][ 1 ] ];
      return phi;
    }

    //! gradients with respect to the reference coordinates
    static std::array< FieldVector, size > gradients ( const FieldVector &x )
    {
      const auto l = barycentric( x );
      const std::array< FieldVector, 3 > dl{ FieldVector{ -1.0, -1.0 }, FieldVector{ 1.0, 0.0 }, FieldVector{ 0.0, 1.0 } };
      std::array< FieldVector, size > grad;
      for( int i = 0; i < 3; ++i )
        grad[ i ] = dl[ i ] * ( 4.0 * l[ i ] - 1.0 );
      for( int k = 0; k < 3; ++k )
      {
        const int i = edges[ k ][ 0 ], j = edges[ k ][ 1 ];
        grad[ 3 + k ] = ( dl[ i ] * l[ j ] + dl[ j ] * l[ i ] ) * 4.0;
      }
      return grad;
    }

    //! Lagrange nodes in reference coordinates
    static std::array< FieldVector, size > nodes ()
    {
      return { FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 0.0 }, FieldVector{ 0.0, 1.0 },
               FieldVector{ 0.5, 0.0 }, FieldVector{ 0.0, 0.5 }, FieldVector{ 0.5, 0.5 } };
    }
  };

  inline constexpr int p2AssemblyOrder = 4;

  //! local stiffness matrix of one triangle, gradients pulled back with the inverse Jacobian
  inline Array2 p2ElementStiffness ( const AffineGeometry &geometry, int order = p2AssemblyOrder )
  {
    if( geometry.type() != triangle )
      throw CapabilityError( "p2ElementStiffness: only triangles are supported, got " + geometry.type().name() );
    const QuadratureRule rule = quadratureRule( triangle, order );
    Array2 A( P2Basis::size, P2Basis::size, 0.0 );
    for( const QuadraturePoint &qp : rule )
    {
      const FieldMatrix &jit = geometry.jacobianInverseTransposed( qp.position );
      const auto refGrad = P2Basis::gradients( qp.position );
      std::array< FieldVector, P2Basis::size > grad;
      for( int i = 0; i < P2Basis::size; ++i )
        grad[ i ] = jit.mv( refGrad[ i ] );
      const double factor = qp.weight * geometry.integrationElement( qp.position );
      for( int i = 0; i < P2Basis::size; ++i )
        for( int j = 0; j < P2Basis::size; ++j )
          A( i, j ) += factor * grad[ j ].dot( grad[ i ] );
    }
    return A;
  }

  //! one index per vertex and per edge
  inline MCMGMapper p2Mapper ( const GridView &view )
  {
    return MCMGMapper( view, Layout::perType( { { vertex, 1 }, { line, 1 } } ) );
  }

  struct P2System
  {
    SparseMatrix matrix;
    std::vector< double > rhs;
    MCMGMapper mapper;
  };

  namespace Impl
  {
    inline void checkP2Grid ( const GridView &view )
    {
      if( view.dimension() != 2 )
        throw CapabilityError( "P2 finite elements: grid dimension must be 2" );
      for( GeometryType gt : view.indexSet().types( 0 ) )
        if( gt != triangle )
          throw CapabilityError( "P2 finite elements: unsupported element type " + gt.name() );
    }
  } // namespace Impl

  /** \brief stiffness matrix and load vector for -Laplace u = f
   *
   *  The load vector uses a single batched evaluation of f per element.
   */
  inline P2System femAssembleP2 ( const GridView &view, const GridFunction &f )
  {
    Impl::checkP2Grid( view );
    if( f.rangeDimension() != 1 )
      throw ShapeError( "femAssembleP2: right hand side must be scalar" );

    P2System sys{ SparseMatrix(), {}, p2Mapper( view ) };
    const int n = static_cast< int >( sys.mapper.size() );
    sys.matrix = SparseMatrix( n, n );
    sys.rhs.assign( n, 0.0 );

    const QuadratureRule rule = quadratureRule( triangle, p2AssemblyOrder );
    const auto &[ positions, weights ] = rule.get();
    std::vector< std::array< double, P2Basis::size > > phi;
    for( const FieldVector &x : positions )
      phi.push_back( P2Basis::values( x ) );

    for( const Entity &element : view.elements() )
    {
      const AffineGeometry geometry = element.geometry();
      const std::vector< std::int64_t > dofs = sys.mapper.all( element );
      const Array2 local = p2ElementStiffness( geometry );
      for( int i = 0; i < P2Basis::size; ++i )
        for( int j = 0; j < P2Basis::size; ++j )
          sys.matrix.add( dofs[ i ], dofs[ j ], local( i, j ) );

      const Array2 fv = f.evaluate( element, positions );
      const std::vector< double > ie = geometry.integrationElement( positions );
      for( std::size_t q = 0; q < positions.size(); ++q )
        for( int i = 0; i < P2Basis::size; ++i )
          sys.rhs[ dofs[ i ] ] += weights[ q ] * ie[ q ] * fv( q, 0 ) * phi[ q ][ i ];
    }
    sys.matrix.finalize();
    return sys;
  }

  //! flags the dofs lying on boundary facets
  inline std::vector< bool > p2BoundaryDofs ( const GridView &view, const MCMGMapper &mapper )
  {
    std::vector< bool > result( mapper.size(), false );
    for( const Entity &element : view.elements() )
      for( const Intersection &is : view.intersections( element ) )
      {
        if( !is.boundary() )
          continue;
        const Entity edge = element.subEntity( is.indexInInside(), 1 );
        result[ mapper.index( edge ) ] = true;
        for( int k = 0; k < 2; ++k )
          result[ mapper.index( edge.subEntity( k, 2 ) ) ] = true;
      }
    return result;
  }

  //! values of g at the Lagrange nodes of the flagged dofs
  inline std::vector< double > p2NodalValues ( const GridView &view, const MCMGMapper &mapper, const std::vector< bool > &flags,
                                                 const GridFunction &g )
  {
    std::vector< double > result( mapper.size(), 0.0 );
    const auto nodes = P2Basis::nodes();
    for( const Entity &element : view.elements() )
    {
      const auto dofs = mapper.all( element );
      bool any = false;
      for( auto d : dofs )
        any = any || flags[ d ];
      if( !any )
        continue;
      const Array2 v = g.evaluate( element, nodes );
      for( int i = 0; i < P2Basis::size; ++i )
        if( flags[ dofs[ i ] ] )
          result[ dofs[ i ] ] = v( i, 0 );
    }
    return result;
  }

  /** \brief Dirichlet conditions by symmetric elimination
   *
   *  Boundary rows and columns become unit vectors and the right hand side
   *  is corrected so the system stays symmetric.
   */
  inline void applyDirichlet ( SparseMatrix &A, std::vector< double > &rhs, const std::vector< bool > &boundary,
                               const std::vector< double > &values )
  {
    const int n = A.rows();
    if( static_cast< int >( rhs.size() ) != n || static_cast< int >( boundary.size() ) != n || static_cast< int >( values.size() ) != n )
      throw ShapeError( "applyDirichlet: size mismatch" );
    const auto &rowPtr = A.rowPointers();
    const auto &cols = A.columnIndices();
    auto &a = A.values();
    for( int i = 0; i < n; ++i )
      for( int k = rowPtr[ i ]; k < rowPtr[ i + 1 ]; ++k )
      {
        const int j = cols[ k ];
        if( boundary[ i ] )
          a[ k ] = ( i == j ) ? 1.0 : 0.0;
        else if( boundary[ j ] )
        {
          rhs[ i ] -= a[ k ] * values[ j ];
          a[ k ] = 0.0;
        }
      }
    for( int i = 0; i < n; ++i )
      if( boundary[ i ] )
        rhs[ i ] = values[ i ];
  }

  inline void applyDirichlet ( const GridView &view, P2System &sys, const GridFunction &g )
  {
    const auto flags = p2BoundaryDofs( view, sys.mapper );
    applyDirichlet( sys.matrix, sys.rhs, flags, p2NodalValues( view, sys.mapper, flags, g ) );
  }

  //! piecewise quadratic function with the given dof vector
  inline GridFunction p2Function ( const MCMGMapper &mapper, std::vector< double > data )
  {
    if( static_cast< std::int64_t >( data.size() ) != mapper.size() )
      throw DomainError( "p2Function: data length does not match the mapper" );
    return GridFunction::fromLocal( mapper.gridView(),
      [ mapper, data = std::move( data ) ] ( const Entity &element, std::span< const FieldVector > x ) {
        const auto dofs = mapper.all( element );
        Array2 result( x.size(), 1, 0.0 );
        for( std::size_t q = 0; q < x.size(); ++q )
        {
          const auto phi = P2Basis::values( x[ q ] );
          for( int i = 0; i < P2Basis::size; ++i )
            result( q, 0 ) += data[ dofs[ i ] ] * phi[ i ];
        }
        return result;
      }, 1 );
  }

  struct PoissonStep
  {
    double h = 0.0;
    std::int64_t dofs = 0;
    double l2error = 0.0;
    double rate = std::nan( "" );
    int iterations = 0;
  };

  /** \brief manufactured Poisson problem on the unit square
   *
   *  Exact solution u = x0 x1 (1-x0) (1-x1) with homogeneous Dirichlet data,
   *  solved on a 4x4 triangulation refined 0..maxRefine times.
   */
  inline std::vector< PoissonStep > poissonConvergence ( int maxRefine, double tol = 1e-10 )
  {
    if( maxRefine < 0 )
      throw DomainError( "poissonConvergence: negative refinement" );
    auto exact = [] ( const FieldVector &x ) { return x[ 0 ] * x[ 1 ] * ( 1.0 - x[ 0 ] ) * ( 1.0 - x[ 1 ] ); };
    auto rhs = [] ( const FieldVector &x ) { return 2.0 * ( x[ 0 ] * ( 1.0 - x[ 0 ] ) + x[ 1 ] * ( 1.0 - x[ 1 ] ) ); };

    std::vector< PoissonStep > steps;
    for( int k = 0; k <= maxRefine; ++k )
    {
      GridView view = simplexGrid( cartesianTriangulation( FieldVector{ 0.0, 0.0 }, FieldVector{ 1.0, 1.0 }, 4, 4 ) );
      view.hierarchicalGrid().globalRefine( k );

      const GridFunction f = gridFunctionFromGlobal( view, rhs );
      const GridFunction zero = gridFunctionFromGlobal( view, [] ( const FieldVector & ) { return 0.0; } );
      P2System sys = femAssembleP2( view, f );
      applyDirichlet( view, sys, zero );

      const int n = sys.matrix.rows();
      const CGResult cg = cgSolve( sys.matrix, sys.rhs, tol, std::max( 100, 10 * static_cast< int >( std::sqrt( double( n ) ) ) ) );
      const GridFunction uh = p2Function( sys.mapper, cg.x );

      const QuadratureRule rule = quadratureRule( triangle, maxTriangleOrder );
      const auto &[ positions, weights ] = rule.get();
      double err2 = 0.0;
      for( const Entity &element : view.elements() )
      {
        const AffineGeometry geometry = element.geometry();
        const Array2 v = uh.evaluate( element, positions );
        const auto world = geometry.toGlobal( positions );
        const auto ie = geometry.integrationElement( positions );
        for( std::size_t q = 0; q < positions.size(); ++q )
        {
          const double d = v( q, 0 ) - exact( world[ q ] );
          err2 += weights[ q ] * ie[ q ] * d * d;
        }
      }

      PoissonStep step;
      step.h = 0.25 / double( 1 << k );
      step.dofs = sys.mapper.size();
      step.l2error = std::sqrt( err2 );
      step.iterations = cg.iterations;
      if( !steps.empty() )
        step.rate = std::log( steps.back().l2error / step.l2error ) / std::log( steps.back().h / step.h );
      steps.push_back( step );
    }
    return steps;
  }

} // namespace gridkit

#endif // GRIDKIT_SCHEMES_P2FEM_HH
