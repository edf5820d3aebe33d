#ifndef GRIDKIT_GEOMETRY_AFFINEGEOMETRY_HH
#define GRIDKIT_GEOMETRY_AFFINEGEOMETRY_HH

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/common/fieldvector.hh>
#include <gridkit/geometry/referenceelement.hh>
#include <gridkit/geometry/type.hh>

namespace gridkit
{

  /** \brief affine mapping from a reference element into world coordinates
   *
   *  For simplices the map is c0 + sum_i x_i (c_{i+1} - c0); for cubes it
   *  is c0 + sum_i x_i (c_{2^i} - c0), which covers the axis-aligned and
   *  parallelepiped cells produced by the grids here. All geometries are
   *  affine, so the Jacobian data is computed once.
   */
  class AffineGeometry
  {
  public:
    AffineGeometry () = default;

    AffineGeometry ( GeometryType type, std::vector< FieldVector > corners )
      : type_( type ), corners_( std::move( corners ) )
    {
      if( static_cast< int >( corners_.size() ) != type.corners() )
        throw DomainError( "AffineGeometry: " + type.name() + " needs " + std::to_string( type.corners() )
                           + " corners, got " + std::to_string( corners_.size() ) );
      worldDim_ = corners_.empty() ? 0 : corners_.front().size();
      for( const auto &c : corners_ )
        if( c.size() != worldDim_ )
          throw DomainError( "AffineGeometry: corners of different dimension" );
      if( worldDim_ < type.dim() )
        throw DomainError( "AffineGeometry: world dimension smaller than reference dimension" );

      const int dim = type.dim();
      jt_ = FieldMatrix( dim, worldDim_ );
      for( int i = 0; i < dim; ++i )
      {
        const int k = type.isSimplex() ? i+1 : ( 1 << i );
        jt_.setRow( i, corners_[ k ] - corners_[ 0 ] );
      }

      const FieldMatrix gram = jt_ * jt_.transposed();
      const double det = gram.determinant();
      integrationElement_ = std::sqrt( std::max( det, 0.0 ) );
      if( dim == 0 )
        integrationElement_ = 1.0;
      else if( dim == worldDim_ )
        integrationElement_ = std::abs( jt_.determinant() );

      singular_ = ( dim > 0 ) && !( integrationElement_ > 0.0 );
      if( !singular_ )
      {
        // pseudo-inverse transposed: J (J^T J)^{-1} with J = jt^T
        if( dim == worldDim_ )
          jit_ = jt_.inverse();
        else
          jit_ = jt_.transposed() * gram.inverse();
      }
    }

    GeometryType type () const noexcept { return type_; }
    int mydimension () const noexcept { return type_.dim(); }
    int coorddimension () const noexcept { return worldDim_; }

    //! always true: only affine maps are constructed
    bool affine () const noexcept { return true; }

    const std::vector< FieldVector > &corners () const noexcept { return corners_; }
    const FieldVector &corner ( int i ) const { return corners_.at( i ); }

    const ReferenceElement &referenceElement () const { return gridkit::referenceElement( type_ ); }

    FieldVector toGlobal ( const FieldVector &local ) const
    {
      checkLocal( local );
      FieldVector x = corners_[ 0 ];
      for( int i = 0; i < local.size(); ++i )
        x.axpy( local[ i ], jt_.row( i ) );
      return x;
    }

    std::vector< FieldVector > toGlobal ( std::span< const FieldVector > locals ) const
    {
      std::vector< FieldVector > result;
      result.reserve( locals.size() );
      for( const auto &x : locals )
        result.push_back( toGlobal( x ) );
      return result;
    }

    //! inverse map; points outside the image are returned unclamped
    FieldVector toLocal ( const FieldVector &global ) const
    {
      if( global.size() != worldDim_ )
        throw DomainError( "toLocal: expected " + std::to_string( worldDim_ ) + " coordinates, got " + std::to_string( global.size() ) );
      checkRegular();
      // jit^T (x - c0)
      return jit_.mtv( global - corners_[ 0 ] );
    }

    const FieldMatrix &jacobianTransposed ( const FieldVector &local ) const
    {
      checkLocal( local );
      return jt_;
    }

    const FieldMatrix &jacobianInverseTransposed ( const FieldVector &local ) const
    {
      checkLocal( local );
      checkRegular();
      return jit_;
    }

    //! sqrt(det(J^T J)); zero for degenerate maps
    double integrationElement ( const FieldVector &local ) const
    {
      checkLocal( local );
      return integrationElement_;
    }

    std::vector< double > integrationElement ( std::span< const FieldVector > locals ) const
    {
      std::vector< double > result;
      result.reserve( locals.size() );
      for( const auto &x : locals )
        result.push_back( integrationElement( x ) );
      return result;
    }

    FieldVector center () const { return toGlobal( referenceElement().center() ); }

    //! measure of the image; points have volume 0
    double volume () const
    {
      if( type_.dim() == 0 )
        return 0.0;
      return integrationElement_ * referenceElement().volume();
    }

  private:
    void checkLocal ( const FieldVector &local ) const
    {
      if( local.size() != type_.dim() )
        throw DomainError( "AffineGeometry: local coordinate of length " + std::to_string( local.size() )
                           + " for " + type_.name() );
    }

    void checkRegular () const
    {
      if( singular_ )
        throw NumericError( "AffineGeometry: singular geometry (zero volume " + type_.name() + ")" );
    }

    GeometryType type_;
    std::vector< FieldVector > corners_;
    int worldDim_ = 0;
    FieldMatrix jt_;
    FieldMatrix jit_;
    double integrationElement_ = 0.0;
    bool singular_ = false;
  };

} // namespace gridkit

#endif // GRIDKIT_GEOMETRY_AFFINEGEOMETRY_HH
