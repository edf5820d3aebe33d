#ifndef GRIDKIT_GEOMETRY_TYPE_HH
#define GRIDKIT_GEOMETRY_TYPE_HH

#include <compare>
#include <ostream>
#include <string>

#include <gridkit/common/exceptions.hh>

namespace gridkit
{

  /** \brief dimension plus basic shape of a reference element
   *
   *  Dimensions 0 and 1 have a single shape each; cube(0) and cube(1) are
   *  stored as simplex(0) and simplex(1) so that equality is canonical.
   */
  class GeometryType
  {
  public:
    enum class Shape : unsigned char { simplex = 0, cube = 1 };

    constexpr GeometryType () = default;

    constexpr GeometryType ( int dim, Shape shape )
      : dim_( dim ), shape_( dim <= 1 ? Shape::simplex : shape )
    {}

    constexpr int dim () const noexcept { return dim_; }
    constexpr Shape shape () const noexcept { return shape_; }

    constexpr bool isVertex () const noexcept { return dim_ == 0; }
    constexpr bool isLine () const noexcept { return dim_ == 1; }
    constexpr bool isSimplex () const noexcept { return shape_ == Shape::simplex; }
    constexpr bool isCube () const noexcept { return dim_ <= 1 || shape_ == Shape::cube; }
    constexpr bool isTriangle () const noexcept { return dim_ == 2 && shape_ == Shape::simplex; }
    constexpr bool isQuadrilateral () const noexcept { return dim_ == 2 && shape_ == Shape::cube; }
    constexpr bool isTetrahedron () const noexcept { return dim_ == 3 && shape_ == Shape::simplex; }
    constexpr bool isHexahedron () const noexcept { return dim_ == 3 && shape_ == Shape::cube; }

    //! number of corners of the reference element
    constexpr int corners () const noexcept
    {
      return shape_ == Shape::cube ? ( 1 << dim_ ) : dim_ + 1;
    }

    // ordered by dimension, then simplex before cube
    friend constexpr auto operator<=> ( const GeometryType &, const GeometryType & ) = default;

    std::string name () const
    {
      switch( dim_ )
      {
      case 0: return "vertex";
      case 1: return "line";
      case 2: return isSimplex() ? "triangle" : "quadrilateral";
      default: return isSimplex() ? "tetrahedron" : "hexahedron";
      }
    }

    friend std::ostream &operator<< ( std::ostream &out, const GeometryType &gt ) { return out << gt.name(); }

  private:
    int dim_ = 0;
    Shape shape_ = Shape::simplex;
  };

  inline GeometryType simplex ( int dim )
  {
    if( dim < 0 || dim > 3 )
      throw DomainError( "simplex: dimension " + std::to_string( dim ) + " not in [0,3]" );
    return GeometryType( dim, GeometryType::Shape::simplex );
  }

  inline GeometryType cube ( int dim )
  {
    if( dim < 0 || dim > 3 )
      throw DomainError( "cube: dimension " + std::to_string( dim ) + " not in [0,3]" );
    return GeometryType( dim, GeometryType::Shape::cube );
  }

  inline constexpr GeometryType vertex{ 0, GeometryType::Shape::simplex };
  inline constexpr GeometryType line{ 1, GeometryType::Shape::simplex };
  inline constexpr GeometryType triangle{ 2, GeometryType::Shape::simplex };
  inline constexpr GeometryType quadrilateral{ 2, GeometryType::Shape::cube };
  inline constexpr GeometryType tetrahedron{ 3, GeometryType::Shape::simplex };
  inline constexpr GeometryType hexahedron{ 3, GeometryType::Shape::cube };

  //! parse the names produced by GeometryType::name()
  inline GeometryType geometryTypeFromName ( const std::string &name )
  {
    for( GeometryType gt : { vertex, line, triangle, quadrilateral, tetrahedron, hexahedron } )
      if( gt.name() == name )
        return gt;
    throw DomainError( "unknown geometry type '" + name + "'" );
  }

} // namespace gridkit

#endif // GRIDKIT_GEOMETRY_TYPE_HH
