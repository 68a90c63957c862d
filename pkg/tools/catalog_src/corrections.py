# id -> list of (symbol, corrected formula, note)
CORR = {
 'odd.c1.7-7-1-1': [
   ('zeta', '4*(alpha*n+beta)+2*alpha+phi3(n-1)', 'constant alpha read as 2*alpha'),
   ('C', '2*(alpha*n+beta)+2*alpha+phi2(n)-phi3(n+1)-phi4(n+1)-gamma', 'undefined phi_n(n+1) read as phi4(n+1)')],
 'odd.c2.13-1-1-1': [
   ('C', '5*(alpha*n+beta)+alpha-phi2(n)-phi3(n+1)+phi5(n-2)-phi5(n+1)', 'sign of phi5(n-2) flipped'),
   ('D', '-(alpha*n+beta)+alpha+phi2(n)-phi3(n+1)-phi5(n-2)-phi5(n+1)', 'sign of phi5(n-2) flipped')],
 'odd.c2.11-3-1-1': [
   ('A', '4*(alpha*n+beta)-3*alpha+phi2(n)+phi5(n)+phi5(n-2)+phi5(n+1)+chi4(n)', 'linear coefficient 2 read as 4'),
   ('C', '4*(alpha*n+beta)+3*alpha+phi2(n)-phi5(n-2)-phi5(n+1)+chi4(n+1)', 'linear coefficient 2 read as 4')],
 'odd.c2.11-1-3-1': [
   ('C', '5*(alpha*n+beta)+9*alpha-phi4(n-1)-phi5(n-2)+phi5(n-1)', '+phi5(n+2) read as -phi5(n-2)')],
 'odd.c2.7-3-5-1': [
   ('D', 'alpha+phi8(n+4)-phi8(n+3)-phi8(n+2)+2*phi8(n+1)-phi8(n)', 'sign of 2*phi8(n+1) flipped')],
 'odd.c2.7-1-3-5': [
   ('D', '(alpha*n+beta)-alpha-phi8(n+3)+2*phi8(n+2)-phi8(n+1)+phi8(n-1)', 'missing constant -alpha inserted')],
 'odd.c2.5-5-5-1': [
   ('C', '3*(alpha*n+beta)-phi2(n)+omega9(n+3)+omega9(n+2)+omega9(n-2)', 'omega9(n-3) read as omega9(n-2)')],
 'odd.c2.5-3-5-3': [
   ('A', '2*(alpha*n+beta)-2*alpha+chi8(n)-chi8(n-2)-chi8(n+1)-chi8(n-1)+chi6(n+1)+chi6(n-1)',
    'constant -4*alpha read as -2*alpha; chi6 terms replaced by the unique ones compatible with z and zeta'),
   ('B', '2*(alpha*n+beta)+chi8(n)+chi8(n-2)+chi8(n+1)-chi8(n-1)-chi6(n+1)-chi6(n-1)',
    'chi6 terms replaced by the unique ones compatible with z and zeta'),
   ('C', '3*(alpha*n+beta)+chi8(n-1)-chi8(n+1)+chi8(n+2)+chi6(n)-chi6(n+1)-chi6(n-1)',
    'chi6 terms replaced by the unique ones compatible with z and zeta'),
   ('D', '(alpha*n+beta)+chi8(n+1)-chi8(n-1)-chi8(n+2)+chi6(n)-chi6(n+1)+chi6(n-1)',
    'chi6 terms replaced by the unique ones compatible with z and zeta')],
 'mixed.c1.9-2-3-2': [
   ('D', '(alpha*n+beta)-alpha/2+phi2(n)-phi7(n-1)-phi7(n+2)+phi7(n+1)', 'token al/2 read as alpha/2')],
 'mixed.c1.5-6-3-2': [
   ('C', '3*(alpha*n+beta)+7*alpha/2-phi2(n)+omega9(n+5)+omega9(n+4)-omega9(n+3)+2*omega9(n+1)',
    'misplaced parenthesis -phi2(n+...) read as -phi2(n)+...')],
 'mixed.c1.3-6-3-4': [
   ('D', '2*(alpha*n+beta)-alpha+chi10(n-1)-chi10(n-2)+chi10(n+2)-chi10(n+1)+chi4(n-1)+chi4(n)', 'sign of chi10(n-2) flipped')],
 'mixed.c1.5-4-5-2': [
   ('D', '(alpha*n+beta)-alpha+3*phi2(n)+chi12(n+5)-chi12(n+4)+chi12(n+3)-chi12(n+2)+chi12(n+1)', 'duplicated term +3*phi2(n) dropped')],
 'mixed.c2.3-4-1-8': [
   ('A', '5*(alpha*n+beta)/2+4*alpha+2*gamma-phi3(n+1)+phi5(n+2)-phi5(n-1)', 'phi5(n-2) read as phi5(n-1)'),
   ('B', '3*(alpha*n+beta)/2+2*alpha+2*gamma+phi3(n)-phi3(n-1)-phi5(n+2)-phi5(n-1)', 'missing terms +phi3(n)-phi3(n-1) inserted')],
 'mixed.c2.3-4-3-6': [
   ('B', '2*(alpha*n+beta)-5*alpha+3*gamma-phi2(n)+chi4(n+1)+chi4(n)+chi6(n)', 'sign of phi2(n) flipped')],
 'mixed.c2.5-4-5-2': [
   ('zeta', '(alpha*n+beta)+2*gamma+phi2(n)-chi8(n)-chi8(n+1)', 'missing term +phi2(n) inserted (alternative: drop phi2 from z and read 4*phi2 in D as phi2)'),
   ('C', '3*(alpha*n+beta)+3*gamma+chi8(n)-chi8(n+1)', 'term -phi2(n) dropped')],
}
