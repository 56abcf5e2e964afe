#include <sstream>

#include "odfkit/syntax.hpp"

namespace odfkit {

namespace {
void print(const FormulaPtr& f, std::ostream& os) {
  switch (f->kind) {
    case FKind::True:
      os << "true";
      return;
    case FKind::False:
      os << "false";
      return;
    case FKind::UnaryAtom:
      os << f->pred << "(" << f->v1 << ")";
      return;
    case FKind::NavAtom:
      os << relName(f->rel) << "(" << f->v1 << "," << f->v2 << ")";
      return;
    case FKind::Eq:
      os << "eq(" << f->v1 << "," << f->v2 << ")";
      return;
    case FKind::Not:
      os << "!";
      print(f->kids[0], os);
      return;
    case FKind::And:
    case FKind::Or:
      os << "(";
      print(f->kids[0], os);
      os << (f->kind == FKind::And ? " & " : " | ");
      print(f->kids[1], os);
      os << ")";
      return;
    case FKind::Exists:
    case FKind::Forall:
      os << (f->kind == FKind::Exists ? "E" : "A");
      for (auto& v : f->vars) os << " " << v;
      os << ". ";
      print(f->kids[0], os);
      return;
    case FKind::CountGe:
    case FKind::CountLe:
      os << (f->kind == FKind::CountGe ? "E>=" : "E<=") << f->threshold << " "
         << f->v1 << ". ";
      print(f->kids[0], os);
      return;
  }
}

void printM(const ModalPtr& f, std::ostream& os) {
  switch (f->kind) {
    case MKind::Prop:
      os << f->prop;
      return;
    case MKind::True:
      os << "true";
      return;
    case MKind::False:
      os << "false";
      return;
    case MKind::Not:
      os << "!";
      printM(f->kids[0], os);
      return;
    case MKind::And:
    case MKind::Or:
      os << "(";
      printM(f->kids[0], os);
      os << (f->kind == MKind::And ? " & " : " | ");
      printM(f->kids[1], os);
      os << ")";
      return;
    case MKind::Diamond:
      os << "<" << dirName(f->dir) << ">";
      printM(f->kids[0], os);
      return;
    case MKind::Box:
      os << "[" << dirName(f->dir) << "]";
      printM(f->kids[0], os);
      return;
  }
}
}  // namespace

std::string printFormula(const FormulaPtr& f) {
  std::ostringstream os;
  print(f, os);
  return os.str();
}

std::string printModal(const ModalPtr& f) {
  std::ostringstream os;
  printM(f, os);
  return os.str();
}

}  // namespace odfkit
