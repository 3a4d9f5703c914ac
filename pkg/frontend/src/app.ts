/**
 * app.ts - shell around the six screens.
 *
 * Builds every screen once and toggles visibility, so per-screen state
 * (selected criterion, staged entries, previews) survives navigation.
 * Two banners sit above the screens: a plain error strip, and the
 * version-conflict prompt whose only exit is reloading the server's
 * snapshot, after which the user re-applies what they still want.
 */

import { el, clear } from './dom.js';
import { AppStore, ScreenName } from './state.js';
import { createSetupScreen } from './screens/setup.js';
import { createReferencesScreen } from './screens/references.js';
import { createMatrixScreen } from './screens/matrix.js';
import { createStatementsScreen } from './screens/statements.js';
import { createResultsScreen } from './screens/results.js';
import { createWhatifScreen } from './screens/whatif.js';

const SCREENS: [ScreenName, string, (store: AppStore) => HTMLElement][] = [
  ['setup', 'project', createSetupScreen],
  ['references', 'references', createReferencesScreen],
  ['matrix', 'pairwise', createMatrixScreen],
  ['statements', 'statements', createStatementsScreen],
  ['results', 'results', createResultsScreen],
  ['whatif', 'what-if', createWhatifScreen],
];

export function mountApp(root: HTMLElement, store: AppStore): void {
  clear(root);

  const nav = el('nav', { class: 'topnav' });
  const banners = el('div', { class: 'banners' });
  const stage = el('main', { class: 'stage' });

  const screenEls = new Map<ScreenName, HTMLElement>();
  for (const [name, title, factory] of SCREENS) {
    const button = el('button', { 'data-nav': name }, title);
    button.addEventListener('click', () => store.patch({ screen: name }));
    nav.append(button);
    const element = factory(store);
    screenEls.set(name, element);
    stage.append(element);
  }

  function renderChrome() {
    const { screen, error, conflict } = store.current;
    for (const [name, element] of screenEls) {
      element.hidden = name !== screen;
    }
    for (const button of Array.from(nav.querySelectorAll('button'))) {
      button.classList.toggle('active', button.dataset.nav === screen);
    }

    clear(banners);
    if (conflict) {
      const reload = el('button', { 'data-role': 'reload-merge' }, 'reload and merge');
      reload.addEventListener('click', () => store.acceptConflict());
      banners.append(
        el(
          'div',
          { class: 'banner conflict-banner', 'data-role': 'conflict-banner' },
          `someone else changed this project: ${conflict.message} `,
          reload,
        ),
      );
    }
    if (error) {
      banners.append(
        el('div', { class: 'banner error-banner', 'data-role': 'error-banner' }, error),
      );
    }
  }

  store.subscribe(renderChrome);
  renderChrome();
  root.append(nav, banners, stage);
}
