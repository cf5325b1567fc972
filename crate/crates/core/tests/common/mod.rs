/// (t, J0, J1, Y0, Y1, I0 e^-t, K0 e^t), tabulated with an independent library.
pub const GRID: [(f64, f64, f64, f64, f64, f64, f64); 10] = [
    (0.01, 0.9999750001562495, 0.004999937500260416, -3.005455637083646, -63.67859628206067, 0.9900745851497076, 4.768694028544461),
    (0.5, 0.938469807240813, 0.24226845767487387, -0.4445187335067066, -1.4714723926702433, 0.64503527044915, 1.5241093857739092),
    (1.0, 0.7651976865579665, 0.44005058574493355, 0.08825696421567697, -0.7812128213002888, 0.46575960759364043, 1.1444630798068947),
    (2.5, -0.04838377646819804, 0.497094102464274, 0.498070359615232, 0.14591813796678577, 0.27004644161220276, 0.7595486903280996),
    (5.0, -0.1775967713143383, -0.3275791375914653, -0.30851762524903303, 0.14786314339122691, 0.18354081260932834, 0.547807564313519),
    (7.5, 0.2663396578803784, 0.13524842757970554, 0.11731328614820863, -0.25912851048611624, 0.1483158300773955, 0.45052369910491563),
    (10.0, -0.24593576445134832, 0.04347274616886141, 0.05567116728359961, 0.24901542420695388, 0.1278333371634286, 0.39163193443659866),
    (20.0, 0.16702466434058322, 0.0668331241758502, 0.06264059680938369, -0.1655116143625212, 0.089780311884826, 0.2785448766571822),
    (35.0, -0.12684568275631272, 0.043990942179625514, 0.0457979871951553, 0.12751273354559015, 0.06767837835041363, 0.21110396520427271),
    (50.0, 0.055812327669252086, -0.09751182812517509, -0.09806499547007692, -0.05679566856201487, 0.056561626647454184, 0.17680715585742932),
];
